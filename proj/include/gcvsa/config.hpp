#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace gcvsa {

/// Shape and scale parameters shared by every tensor in one model instance.
/// n is the module side length, n_theta the number of orientations per scale,
/// n_s the number of scales. Scales grow geometrically from s_min by `growth`.
/// `seed` drives the per-scale orientation offsets and any derived randomness.
struct GridConfig {
    int n = 3;
    int n_theta = 23;
    int n_s = 5;
    double s_min = 4.0;
    double growth = 1.42;
    std::uint64_t seed = 0;

    int modules() const { return n_s * n_theta; }
    std::size_t module_size() const {
        return static_cast<std::size_t>(n) * n * n;
    }
    std::size_t tensor_size() const { return modules() * module_size(); }

    void validate() const {
        if (n < 3) throw std::invalid_argument("config: n must be >= 3");
        if (n_theta < 1) throw std::invalid_argument("config: n_theta must be >= 1");
        if (n_s < 1) throw std::invalid_argument("config: n_s must be >= 1");
        if (!(s_min > 0.0)) throw std::invalid_argument("config: s_min must be > 0");
        if (!(growth >= 1.0)) throw std::invalid_argument("config: growth must be >= 1");
    }

    bool operator==(const GridConfig&) const = default;
};

}  // namespace gcvsa
