#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gcvsa/config.hpp"

namespace gcvsa {

/// Reduce a phase to the canonical half-open range [0, n).
inline double wrap_phase(double x, int n) {
    double y = std::fmod(x, static_cast<double>(n));
    if (y < 0.0) y += static_cast<double>(n);
    if (y >= static_cast<double>(n)) y -= static_cast<double>(n);
    return y;
}

/// Dense rank-5 real tensor with shape (n_s, n_theta, n, n, n), row-major.
/// Each (scale, orientation) pair owns one contiguous n^3 module block.
class GcTensor {
public:
    explicit GcTensor(const GridConfig& cfg)
        : cfg_(cfg), data_(cfg.tensor_size(), 0.0) {
        cfg_.validate();
    }

    GcTensor(const GridConfig& cfg, std::vector<double> data)
        : cfg_(cfg), data_(std::move(data)) {
        cfg_.validate();
        if (data_.size() != cfg_.tensor_size())
            throw std::invalid_argument("tensor: data size does not match config");
    }

    const GridConfig& config() const { return cfg_; }
    std::size_t size() const { return data_.size(); }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

    double* module(int scale, int orient) {
        return data_.data() + module_offset(scale, orient);
    }
    const double* module(int scale, int orient) const {
        return data_.data() + module_offset(scale, orient);
    }

    double& at(int scale, int orient, int i, int j, int k) {
        const int n = cfg_.n;
        return data_[module_offset(scale, orient) +
                     static_cast<std::size_t>(i) * n * n + j * n + k];
    }
    double at(int scale, int orient, int i, int j, int k) const {
        const int n = cfg_.n;
        return data_[module_offset(scale, orient) +
                     static_cast<std::size_t>(i) * n * n + j * n + k];
    }

private:
    std::size_t module_offset(int scale, int orient) const {
        if (scale < 0 || scale >= cfg_.n_s || orient < 0 || orient >= cfg_.n_theta)
            throw std::out_of_range("tensor: module index out of range");
        return (static_cast<std::size_t>(scale) * cfg_.n_theta + orient) *
               cfg_.module_size();
    }

    GridConfig cfg_;
    std::vector<double> data_;
};

/// Per-module phase triples, shape (n_s, n_theta, 3). The canonical range for
/// a pure vector's phases is [0, n); values produced by extract_phases and
/// fractional_power are wrapped there. Generator slopes (phase per pixel) are
/// deliberately stored unwrapped so that fractional coordinates scale them
/// before any reduction.
class PhaseTensor {
public:
    explicit PhaseTensor(const GridConfig& cfg)
        : cfg_(cfg), phases_(static_cast<std::size_t>(cfg.modules()) * 3, 0.0) {
        cfg_.validate();
    }

    PhaseTensor(const GridConfig& cfg, std::vector<double> phases)
        : cfg_(cfg), phases_(std::move(phases)) {
        cfg_.validate();
        if (phases_.size() != static_cast<std::size_t>(cfg_.modules()) * 3)
            throw std::invalid_argument("phases: size does not match config");
    }

    static PhaseTensor zeros(const GridConfig& cfg) { return PhaseTensor(cfg); }

    const GridConfig& config() const { return cfg_; }
    std::size_t size() const { return phases_.size(); }

    std::vector<double>& values() { return phases_; }
    const std::vector<double>& values() const { return phases_; }

    double& at(int scale, int orient, int axis) {
        return phases_[index(scale, orient, axis)];
    }
    double at(int scale, int orient, int axis) const {
        return phases_[index(scale, orient, axis)];
    }

    /// Copy with every value reduced to [0, n).
    PhaseTensor wrapped() const {
        PhaseTensor out(cfg_);
        for (std::size_t i = 0; i < phases_.size(); ++i)
            out.phases_[i] = wrap_phase(phases_[i], cfg_.n);
        return out;
    }

private:
    std::size_t index(int scale, int orient, int axis) const {
        if (scale < 0 || scale >= cfg_.n_s || orient < 0 ||
            orient >= cfg_.n_theta || axis < 0 || axis >= 3)
            throw std::out_of_range("phases: index out of range");
        return (static_cast<std::size_t>(scale) * cfg_.n_theta + orient) * 3 + axis;
    }

    GridConfig cfg_;
    std::vector<double> phases_;
};

}  // namespace gcvsa
