#include "gcvsa/cli_config.hpp"

#include <cstdlib>
#include <stdexcept>

namespace gcvsa::cli {

namespace {

long long parse_int(const std::string& key, const std::string& v) {
    char* end = nullptr;
    const long long x = std::strtoll(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0')
        throw std::invalid_argument("config: bad integer for " + key + ": " + v);
    return x;
}

double parse_real(const std::string& key, const std::string& v) {
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        throw std::invalid_argument("config: bad number for " + key + ": " + v);
    return x;
}

}  // namespace

void RunConfig::validate() const {
    grid.validate();
    if (arena < 2) throw std::invalid_argument("config: arena must be >= 2");
    if (steps < 1) throw std::invalid_argument("config: steps must be >= 1");
    if (!(traj_gamma >= 0.0 && traj_gamma < 1.0))
        throw std::invalid_argument("config: traj_gamma must be in [0, 1)");
    if (!(traj_max_speed > 0.0))
        throw std::invalid_argument("config: traj_max_speed must be > 0");
    if (traj_sigma < 0.0)
        throw std::invalid_argument("config: traj_sigma must be >= 0");
    if (seeds < 1) throw std::invalid_argument("config: seeds must be >= 1");
    if (jobs < 1) throw std::invalid_argument("config: jobs must be >= 1");
    if (scene_items < 1)
        throw std::invalid_argument("config: scene_items must be >= 1");
    if (scene_t_steps < 1)
        throw std::invalid_argument("config: scene_t_steps must be >= 1");
    if (kernel_scale < 0 || kernel_scale >= grid.n_s)
        throw std::invalid_argument("config: kernel_scale out of range");
    if (kernel_orientation < 0 || kernel_orientation >= grid.n_theta)
        throw std::invalid_argument("config: kernel_orientation out of range");
    if (kernel_i < 0 || kernel_i >= grid.n || kernel_j < 0 ||
        kernel_j >= grid.n || kernel_k < 0 || kernel_k >= grid.n)
        throw std::invalid_argument("config: kernel neuron index out of range");
    if (field_size < 8)
        throw std::invalid_argument("config: field_size must be >= 8");
    if (kernel_extent < 2)
        throw std::invalid_argument("config: kernel_extent must be >= 2");
    if (rotate_extent < 2)
        throw std::invalid_argument("config: rotate_extent must be >= 2");
}

void apply_config_map(RunConfig& rc, const io::ConfigMap& values) {
    for (const auto& [key, v] : values) {
        if (key == "experiment") {
            // Informational in provenance copies; the subcommand stays in
            // charge.
        } else if (key == "n") {
            rc.grid.n = static_cast<int>(parse_int(key, v));
        } else if (key == "n_theta") {
            rc.grid.n_theta = static_cast<int>(parse_int(key, v));
        } else if (key == "n_s") {
            rc.grid.n_s = static_cast<int>(parse_int(key, v));
        } else if (key == "s_min") {
            rc.grid.s_min = parse_real(key, v);
        } else if (key == "growth") {
            rc.grid.growth = parse_real(key, v);
        } else if (key == "seed") {
            rc.grid.seed = static_cast<std::uint64_t>(parse_int(key, v));
        } else if (key == "arena") {
            rc.arena = static_cast<int>(parse_int(key, v));
        } else if (key == "steps") {
            rc.steps = static_cast<int>(parse_int(key, v));
        } else if (key == "traj_gamma") {
            rc.traj_gamma = parse_real(key, v);
        } else if (key == "traj_max_speed") {
            rc.traj_max_speed = parse_real(key, v);
        } else if (key == "traj_sigma") {
            rc.traj_sigma = parse_real(key, v);
        } else if (key == "seeds") {
            rc.seeds = static_cast<int>(parse_int(key, v));
        } else if (key == "jobs") {
            rc.jobs = static_cast<int>(parse_int(key, v));
        } else if (key == "scene_items") {
            rc.scene_items = static_cast<int>(parse_int(key, v));
        } else if (key == "scene_t_steps") {
            rc.scene_t_steps = static_cast<int>(parse_int(key, v));
        } else if (key == "query_identity") {
            rc.query_identity = v;
        } else if (key == "query_x") {
            rc.query_x = parse_real(key, v);
        } else if (key == "query_y") {
            rc.query_y = parse_real(key, v);
        } else if (key == "query_t") {
            rc.query_t = parse_real(key, v);
        } else if (key == "probe") {
            rc.probe = v;
        } else if (key == "kernel_scale") {
            rc.kernel_scale = static_cast<int>(parse_int(key, v));
        } else if (key == "kernel_orientation") {
            rc.kernel_orientation = static_cast<int>(parse_int(key, v));
        } else if (key == "kernel_i") {
            rc.kernel_i = static_cast<int>(parse_int(key, v));
        } else if (key == "kernel_j") {
            rc.kernel_j = static_cast<int>(parse_int(key, v));
        } else if (key == "kernel_k") {
            rc.kernel_k = static_cast<int>(parse_int(key, v));
        } else if (key == "field_size") {
            rc.field_size = static_cast<int>(parse_int(key, v));
        } else if (key == "kernel_extent") {
            rc.kernel_extent = static_cast<int>(parse_int(key, v));
        } else if (key == "rotate_x") {
            rc.rotate_x = parse_real(key, v);
        } else if (key == "rotate_y") {
            rc.rotate_y = parse_real(key, v);
        } else if (key == "rotate_angle_deg") {
            rc.rotate_angle_deg = parse_real(key, v);
        } else if (key == "rotate_extent") {
            rc.rotate_extent = static_cast<int>(parse_int(key, v));
        } else {
            throw std::invalid_argument("config: unknown key: " + key);
        }
    }
}

void apply_overrides(RunConfig& rc, const RunOverrides& ov) {
    if (ov.n) rc.grid.n = *ov.n;
    if (ov.n_theta) rc.grid.n_theta = *ov.n_theta;
    if (ov.n_s) rc.grid.n_s = *ov.n_s;
    if (ov.s_min) rc.grid.s_min = *ov.s_min;
    if (ov.growth) rc.grid.growth = *ov.growth;
    if (ov.seed) rc.grid.seed = *ov.seed;
    if (ov.arena) rc.arena = *ov.arena;
    if (ov.steps) rc.steps = *ov.steps;
    if (ov.seeds) rc.seeds = *ov.seeds;
    if (ov.jobs) rc.jobs = *ov.jobs;
    if (ov.traj_gamma) rc.traj_gamma = *ov.traj_gamma;
    if (ov.traj_max_speed) rc.traj_max_speed = *ov.traj_max_speed;
    if (ov.traj_sigma) rc.traj_sigma = *ov.traj_sigma;
    if (ov.scene_items) rc.scene_items = *ov.scene_items;
    if (ov.scene_t_steps) rc.scene_t_steps = *ov.scene_t_steps;
    if (ov.query_identity) rc.query_identity = *ov.query_identity;
    if (ov.query_x) rc.query_x = *ov.query_x;
    if (ov.query_y) rc.query_y = *ov.query_y;
    if (ov.query_t) rc.query_t = *ov.query_t;
    if (ov.probe) rc.probe = *ov.probe;
    if (ov.kernel_scale) rc.kernel_scale = *ov.kernel_scale;
    if (ov.kernel_orientation) rc.kernel_orientation = *ov.kernel_orientation;
    if (ov.kernel_i) rc.kernel_i = *ov.kernel_i;
    if (ov.kernel_j) rc.kernel_j = *ov.kernel_j;
    if (ov.kernel_k) rc.kernel_k = *ov.kernel_k;
    if (ov.field_size) rc.field_size = *ov.field_size;
    if (ov.kernel_extent) rc.kernel_extent = *ov.kernel_extent;
    if (ov.rotate_x) rc.rotate_x = *ov.rotate_x;
    if (ov.rotate_y) rc.rotate_y = *ov.rotate_y;
    if (ov.rotate_angle_deg) rc.rotate_angle_deg = *ov.rotate_angle_deg;
    if (ov.rotate_extent) rc.rotate_extent = *ov.rotate_extent;
}

io::ConfigMap to_config_map(const RunConfig& rc) {
    io::ConfigMap m;
    m["experiment"] = rc.experiment;
    m["n"] = std::to_string(rc.grid.n);
    m["n_theta"] = std::to_string(rc.grid.n_theta);
    m["n_s"] = std::to_string(rc.grid.n_s);
    m["s_min"] = io::format_double(rc.grid.s_min);
    m["growth"] = io::format_double(rc.grid.growth);
    m["seed"] = std::to_string(rc.grid.seed);
    m["arena"] = std::to_string(rc.arena);
    m["steps"] = std::to_string(rc.steps);
    m["traj_gamma"] = io::format_double(rc.traj_gamma);
    m["traj_max_speed"] = io::format_double(rc.traj_max_speed);
    m["traj_sigma"] = io::format_double(rc.traj_sigma);
    m["seeds"] = std::to_string(rc.seeds);
    m["jobs"] = std::to_string(rc.jobs);
    m["scene_items"] = std::to_string(rc.scene_items);
    m["scene_t_steps"] = std::to_string(rc.scene_t_steps);
    if (rc.query_identity) m["query_identity"] = *rc.query_identity;
    if (rc.query_x) m["query_x"] = io::format_double(*rc.query_x);
    if (rc.query_y) m["query_y"] = io::format_double(*rc.query_y);
    if (rc.query_t) m["query_t"] = io::format_double(*rc.query_t);
    m["probe"] = rc.probe;
    m["kernel_scale"] = std::to_string(rc.kernel_scale);
    m["kernel_orientation"] = std::to_string(rc.kernel_orientation);
    m["kernel_i"] = std::to_string(rc.kernel_i);
    m["kernel_j"] = std::to_string(rc.kernel_j);
    m["kernel_k"] = std::to_string(rc.kernel_k);
    m["field_size"] = std::to_string(rc.field_size);
    m["kernel_extent"] = std::to_string(rc.kernel_extent);
    m["rotate_x"] = io::format_double(rc.rotate_x);
    m["rotate_y"] = io::format_double(rc.rotate_y);
    m["rotate_angle_deg"] = io::format_double(rc.rotate_angle_deg);
    m["rotate_extent"] = std::to_string(rc.rotate_extent);
    return m;
}

RunConfig resolve(const std::string& experiment,
                  const std::optional<std::string>& config_path,
                  const RunOverrides& ov) {
    RunConfig rc;
    rc.experiment = experiment;
    if (config_path) apply_config_map(rc, io::read_config_file(*config_path));
    apply_overrides(rc, ov);
    rc.validate();
    return rc;
}

}  // namespace gcvsa::cli
