#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gcvsa/config.hpp"
#include "gcvsa/io.hpp"

namespace gcvsa::cli {

/// Fully resolved run parameters for every subcommand. Resolution order:
/// built-in defaults, then the config file, then command-line flags.
struct RunConfig {
    GridConfig grid;
    std::string experiment;

    // path-integration
    int arena = 64;
    int steps = 100;
    double traj_gamma = 0.8;
    double traj_max_speed = 2.0;
    double traj_sigma = 1.0;
    int seeds = 1;
    int jobs = 1;

    // scene
    int scene_items = 5;
    int scene_t_steps = 4;
    std::optional<std::string> query_identity;
    std::optional<double> query_x, query_y, query_t;

    // family-tree
    std::string probe = "Charles";

    // kernel
    int kernel_scale = 0;
    int kernel_orientation = 0;
    int kernel_i = 0, kernel_j = 0, kernel_k = 0;
    int field_size = 128;
    int kernel_extent = 64;

    // rotate
    double rotate_x = 6.0;
    double rotate_y = 0.0;
    double rotate_angle_deg = 90.0;
    int rotate_extent = 12;

    void validate() const;
};

/// Unset fields fall through to the layer below.
struct RunOverrides {
    std::optional<int> n, n_theta, n_s;
    std::optional<double> s_min, growth;
    std::optional<std::uint64_t> seed;
    std::optional<int> arena, steps, seeds, jobs;
    std::optional<double> traj_gamma, traj_max_speed, traj_sigma;
    std::optional<int> scene_items, scene_t_steps;
    std::optional<std::string> query_identity;
    std::optional<double> query_x, query_y, query_t;
    std::optional<std::string> probe;
    std::optional<int> kernel_scale, kernel_orientation;
    std::optional<int> kernel_i, kernel_j, kernel_k;
    std::optional<int> field_size, kernel_extent;
    std::optional<double> rotate_x, rotate_y, rotate_angle_deg;
    std::optional<int> rotate_extent;
};

/// Apply a parsed config file over defaults. Unknown keys are rejected.
void apply_config_map(RunConfig& rc, const io::ConfigMap& values);

void apply_overrides(RunConfig& rc, const RunOverrides& ov);

/// Every resolved value as a flat key/value map; feeding the emitted file
/// back through --config reproduces the run.
io::ConfigMap to_config_map(const RunConfig& rc);

RunConfig resolve(const std::string& experiment,
                  const std::optional<std::string>& config_path,
                  const RunOverrides& ov);

}  // namespace gcvsa::cli
