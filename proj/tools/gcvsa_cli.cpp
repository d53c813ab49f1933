// Command-line workbench: runs the bundled experiments and writes their
// outputs (metrics.json, CSV dumps, PGM maps, config provenance) into an
// output directory. Exit codes: 0 success, 1 bad arguments or config, 2
// runtime failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "gcvsa/cli_config.hpp"
#include "gcvsa/core.hpp"
#include "gcvsa/experiments.hpp"
#include "gcvsa/io.hpp"
#include "gcvsa/rotation.hpp"
#include "gcvsa/spatial.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace gcvsa;
using namespace gcvsa::experiments;

namespace {

struct CommonArgs {
    std::optional<std::string> config_path;
    std::string out_dir = "out";
    cli::RunOverrides ov;
};

void add_common_options(CLI::App* sub, CommonArgs& args) {
    sub->add_option("--config", args.config_path,
                    "Config file applied between defaults and flags");
    sub->add_option("--out", args.out_dir, "Output directory")
        ->capture_default_str();
    sub->add_option("--seed", args.ov.seed, "Base seed for all randomness");
    sub->add_option("--n", args.ov.n, "Module side length");
    sub->add_option("--n-theta", args.ov.n_theta, "Orientations per scale");
    sub->add_option("--n-s", args.ov.n_s, "Number of scales");
    sub->add_option("--s-min", args.ov.s_min, "Finest scale, pixels");
    sub->add_option("--growth", args.ov.growth, "Scale ratio");
}

fs::path prepare_out_dir(const std::string& dir) {
    fs::create_directories(dir);
    return fs::path(dir);
}

void write_metrics(const fs::path& out, const json& j) {
    std::ofstream os(out / "metrics.json", std::ios::binary);
    if (!os) throw std::runtime_error("cannot open metrics.json for write");
    os << j.dump(2) << '\n';
}

void write_provenance(const fs::path& out, const cli::RunConfig& rc) {
    io::write_config_file((out / "config.txt").string(), cli::to_config_map(rc));
}

json geometry_json(const ModuleGeometry& geom) {
    json j;
    j["scales"] = geom.scales();
    j["orientation_offsets"] = geom.offsets();
    return j;
}

// ---------------------------------------------------------------------------

int run_path_integration_cmd(const CommonArgs& args) {
    const cli::RunConfig rc =
        cli::resolve("path-integration", args.config_path, args.ov);
    const fs::path out = prepare_out_dir(args.out_dir);

    const Rect arena{0.0, 0.0, static_cast<double>(rc.arena),
                     static_cast<double>(rc.arena)};
    TrajectoryParams params;
    params.gamma = rc.traj_gamma;
    params.max_speed = rc.traj_max_speed;
    params.sigma = rc.traj_sigma;

    std::vector<PathIntegrationResult> results(rc.seeds);
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (int i = next.fetch_add(1); i < rc.seeds; i = next.fetch_add(1))
            results[i] = run_path_integration(rc.grid, arena, rc.steps,
                                              rc.grid.seed + i, params);
    };
    const int threads = std::min(rc.jobs, rc.seeds);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    std::vector<double> mses;
    for (const auto& r : results) mses.push_back(r.mse);
    std::vector<double> sorted = mses;
    std::sort(sorted.begin(), sorted.end());
    const double median = sorted[sorted.size() / 2];

    io::write_trajectory_csv((out / "trajectory.csv").string(),
                             results[0].trajectory, results[0].decoded);
    io::write_pgm((out / "map_final.pgm").string(), results[0].final_map, -0.2,
                  1.0);

    json j;
    j["experiment"] = "path-integration";
    j["arena"] = rc.arena;
    j["steps"] = rc.steps;
    j["seeds"] = rc.seeds;
    j["base_seed"] = rc.grid.seed;
    j["mse_per_seed"] = mses;
    j["mse_median"] = median;
    j["geometry"] = geometry_json(ModuleGeometry(rc.grid));
    write_metrics(out, j);
    write_provenance(out, rc);

    std::cout << "path-integration: " << rc.seeds << " seed(s), median mse "
              << median << " px^2\n";
    return 0;
}

// ---------------------------------------------------------------------------

int run_scene_cmd(const CommonArgs& args) {
    const cli::RunConfig rc = cli::resolve("scene", args.config_path, args.ov);
    const fs::path out = prepare_out_dir(args.out_dir);

    std::vector<std::string> names;
    for (int i = 0; i < rc.scene_items; ++i)
        names.push_back("item" + std::to_string(i));
    const SceneSetup setup = make_scene_setup(
        rc.grid, names, rc.arena, rc.arena, rc.scene_t_steps, rc.grid.seed);

    // Item placement draws from its own stream so setup and placement stay
    // independently reproducible.
    Rng place(rc.grid.seed + 1);
    std::vector<SceneItem> items;
    for (const auto& name : names) {
        SceneItem it;
        it.identity = name;
        it.x = std::floor(place.uniform() * rc.arena);
        it.y = std::floor(place.uniform() * rc.arena);
        it.t = std::floor(place.uniform() * rc.scene_t_steps);
        items.push_back(it);
    }
    const GcTensor scene = encode_scene(setup, items);

    json j;
    j["experiment"] = "scene";
    j["items"] = json::array();
    for (const auto& it : items)
        j["items"].push_back(
            {{"identity", it.identity}, {"x", it.x}, {"y", it.y}, {"t", it.t}});

    const bool has_query = rc.query_identity || rc.query_x || rc.query_y ||
                           rc.query_t;
    if (has_query) {
        SceneQuery q;
        q.identity = rc.query_identity;
        q.x = rc.query_x;
        q.y = rc.query_y;
        q.t = rc.query_t;
        const SceneAnswer a = query_scene(setup, scene, q);
        json ja;
        if (a.identity) ja["identity"] = *a.identity;
        if (a.x) ja["x"] = *a.x;
        if (a.y) ja["y"] = *a.y;
        if (a.t) ja["t"] = *a.t;
        ja["confidence"] = a.confidence;
        ja["low_confidence"] = a.low_confidence;
        j["answer"] = ja;
        if (a.resonator) {
            const std::vector<std::string> factor_names{"x", "y", "t"};
            // Trace columns depend on which features were unknown; name them
            // generically by factor position.
            std::vector<std::string> unk_names;
            std::vector<std::vector<std::string>> unk_keys;
            if (!q.identity) {
                unk_names.push_back("identity");
                unk_keys.push_back(setup.identities.keys());
            }
            if (!q.x) {
                unk_names.push_back("x");
                unk_keys.push_back(setup.x_factors.keys());
            }
            if (!q.y) {
                unk_names.push_back("y");
                unk_keys.push_back(setup.y_factors.keys());
            }
            if (!q.t) {
                unk_names.push_back("t");
                unk_keys.push_back(setup.t_factors.keys());
            }
            io::write_trace_csv((out / "trace.csv").string(), *a.resonator,
                                unk_names, unk_keys);
        }
        write_metrics(out, j);
        write_provenance(out, rc);
        std::cout << "scene: query answered with confidence "
                  << a.confidence << "\n";
        return 0;
    }

    // No explicit query: recover every item's coordinates from its identity
    // and every identity from its coordinates.
    int correct_coords = 0, correct_identity = 0;
    bool trace_written = false;
    json per_item = json::array();
    for (const auto& it : items) {
        SceneQuery by_id;
        by_id.identity = it.identity;
        const SceneAnswer coords = query_scene(setup, scene, by_id);
        const bool coords_ok = coords.x == it.x && coords.y == it.y &&
                               coords.t == it.t;
        correct_coords += coords_ok;

        SceneQuery by_pos;
        by_pos.x = it.x;
        by_pos.y = it.y;
        by_pos.t = it.t;
        const SceneAnswer ident = query_scene(setup, scene, by_pos);
        const bool id_ok = ident.identity == it.identity;
        correct_identity += id_ok;

        per_item.push_back({{"identity", it.identity},
                            {"coords_recovered", coords_ok},
                            {"coords_confidence", coords.confidence},
                            {"identity_recovered", id_ok},
                            {"identity_confidence", ident.confidence}});
        if (!trace_written && coords.resonator) {
            io::write_trace_csv(
                (out / "trace.csv").string(), *coords.resonator,
                {"x", "y", "t"},
                {setup.x_factors.keys(), setup.y_factors.keys(),
                 setup.t_factors.keys()});
            trace_written = true;
        }
    }
    j["queries"] = per_item;
    j["correct_coordinate_queries"] = correct_coords;
    j["correct_identity_queries"] = correct_identity;
    j["total_items"] = rc.scene_items;
    write_metrics(out, j);
    write_provenance(out, rc);
    std::cout << "scene: " << correct_coords << "/" << rc.scene_items
              << " coordinate queries, " << correct_identity << "/"
              << rc.scene_items << " identity queries correct\n";
    return 0;
}

// ---------------------------------------------------------------------------

int run_family_tree_cmd(const CommonArgs& args) {
    const cli::RunConfig rc =
        cli::resolve("family-tree", args.config_path, args.ov);
    const fs::path out = prepare_out_dir(args.out_dir);

    const auto [ta, tb] = default_family_trees();
    const TreeAnalogyResult res =
        run_family_tree_analogy(ta, tb, rc.probe, rc.grid, rc.grid.seed);

    json j;
    j["experiment"] = "family-tree";
    j["probe"] = rc.probe;
    j["answer"] = res.answer;
    json prof = json::array();
    for (const auto& [key, sim] : res.profile)
        prof.push_back({{"name", key}, {"similarity", sim}});
    j["profile"] = prof;

    // Sweep every member as a cross-check.
    int correct = 0;
    json sweep = json::array();
    const std::vector<std::pair<std::string, std::string>> expected{
        {"Alice", "Fred"},
        {"Bob", "George"},
        {"Charles", "Harry"},
        {"Dora", "Igor"},
        {"Emil", "James"}};
    for (const auto& [probe, want] : expected) {
        const TreeAnalogyResult r =
            run_family_tree_analogy(ta, tb, probe, rc.grid, rc.grid.seed);
        correct += r.answer == want;
        sweep.push_back({{"probe", probe}, {"answer", r.answer}});
    }
    j["sweep"] = sweep;
    j["sweep_correct"] = correct;
    write_metrics(out, j);
    write_provenance(out, rc);

    std::cout << "family-tree: " << rc.probe << " -> " << res.answer << " ("
              << correct << "/5 across the sweep)\n";
    return 0;
}

// ---------------------------------------------------------------------------

int run_kernel_cmd(const CommonArgs& args) {
    const cli::RunConfig rc = cli::resolve("kernel", args.config_path, args.ov);
    const fs::path out = prepare_out_dir(args.out_dir);

    const ModuleGeometry geom(rc.grid);
    const double e = static_cast<double>(rc.kernel_extent);
    const double step = 2.0 * e / (rc.field_size - 1);
    const Rect extent{-e, -e, e, e};
    const Field2D f =
        receptive_field(geom, rc.kernel_scale, rc.kernel_orientation,
                        rc.kernel_i, rc.kernel_j, rc.kernel_k, extent, step);

    io::write_pgm((out / "map_kernel.pgm").string(), f, -1.0, 2.0);
    io::write_field_csv((out / "field.csv").string(), f);

    const auto [d1, d2] = lattice_vectors(geom, rc.kernel_scale,
                                          rc.kernel_orientation);
    json j;
    j["experiment"] = "kernel";
    j["scale_index"] = rc.kernel_scale;
    j["orientation_index"] = rc.kernel_orientation;
    j["scale"] = geom.scale(rc.kernel_scale);
    j["orientation_rad"] =
        geom.orientation(rc.kernel_scale, rc.kernel_orientation);
    j["element"] = {rc.kernel_i, rc.kernel_j, rc.kernel_k};
    j["lattice_vectors"] = {{d1.x, d1.y}, {d2.x, d2.y}};
    j["field_size"] = rc.field_size;
    j["extent"] = rc.kernel_extent;
    double lo = f.values[0], hi = f.values[0];
    for (double v : f.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    j["field_min"] = lo;
    j["field_max"] = hi;
    write_metrics(out, j);
    write_provenance(out, rc);

    std::cout << "kernel: scale " << geom.scale(rc.kernel_scale)
              << " px, field range [" << lo << ", " << hi << "]\n";
    return 0;
}

// ---------------------------------------------------------------------------

int run_rotate_cmd(const CommonArgs& args) {
    const cli::RunConfig rc = cli::resolve("rotate", args.config_path, args.ov);
    const fs::path out = prepare_out_dir(args.out_dir);

    const ModuleGeometry geom(rc.grid);
    const double e = static_cast<double>(rc.rotate_extent);
    const PositionCodebook pc =
        position_codebook(Rect{-e, -e, e, e}, 1.0, geom);

    const Point2D start{rc.rotate_x, rc.rotate_y};
    const double alpha = rc.rotate_angle_deg * std::numbers::pi / 180.0;
    const GcTensor v = encode_position(start, geom);
    const GcTensor r = rotate(v, alpha);

    const Point2D before = pc.decode(v);
    const Point2D after = pc.decode(r);
    const double want_x = std::cos(alpha) * start.x - std::sin(alpha) * start.y;
    const double want_y = std::sin(alpha) * start.x + std::cos(alpha) * start.y;
    const double pos_err = std::hypot(after.x - want_x, after.y - want_y);

    json j;
    j["experiment"] = "rotate";
    j["start"] = {start.x, start.y};
    j["angle_deg"] = rc.rotate_angle_deg;
    j["decoded_start"] = {before.x, before.y};
    j["decoded_rotated"] = {after.x, after.y};
    j["expected_rotated"] = {want_x, want_y};
    j["position_error"] = pos_err;

    const auto profile = angle_profile(r, v);
    io::write_profile_csv((out / "angle_profile.csv").string(), profile);
    try {
        const double got = decode_angle(r, v);
        double err = std::abs(got - wrap_phase(alpha / (2 * std::numbers::pi), 1) *
                                        2 * std::numbers::pi);
        err = std::min(err, 2 * std::numbers::pi - err);
        j["decoded_angle_rad"] = got;
        j["angle_error_rad"] = err;
    } catch (const std::runtime_error&) {
        j["decoded_angle_rad"] = nullptr;
    }

    io::write_pgm((out / "map_rotated.pgm").string(), pc.similarity_map(r),
                  -0.2, 1.0);
    write_metrics(out, j);
    write_provenance(out, rc);

    std::cout << "rotate: (" << start.x << ", " << start.y << ") by "
              << rc.rotate_angle_deg << " deg -> decoded (" << after.x << ", "
              << after.y << "), position error " << pos_err << " px\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hexagonal grid-code vector symbolic workbench"};
    app.require_subcommand(1);

    CommonArgs args;

    CLI::App* pi = app.add_subcommand(
        "path-integration", "Integrate a random walk and decode it");
    add_common_options(pi, args);
    pi->add_option("--arena", args.ov.arena, "Arena side length, pixels");
    pi->add_option("--steps", args.ov.steps, "Walk length");
    pi->add_option("--seeds", args.ov.seeds, "Number of consecutive seeds");
    pi->add_option("--jobs", args.ov.jobs, "Worker threads for the sweep");
    pi->add_option("--gamma", args.ov.traj_gamma, "Velocity smoothing");
    pi->add_option("--max-speed", args.ov.traj_max_speed, "Speed cap, px/step");
    pi->add_option("--sigma", args.ov.traj_sigma, "Velocity noise scale");

    CLI::App* scene = app.add_subcommand(
        "scene", "Bind objects into a scene and query it");
    add_common_options(scene, args);
    scene->add_option("--items", args.ov.scene_items, "Number of objects");
    scene->add_option("--arena", args.ov.arena, "Coordinate extent");
    scene->add_option("--t-steps", args.ov.scene_t_steps, "Time extent");
    scene->add_option("--query-identity", args.ov.query_identity,
                      "Known identity for a single query");
    scene->add_option("--query-x", args.ov.query_x, "Known x");
    scene->add_option("--query-y", args.ov.query_y, "Known y");
    scene->add_option("--query-t", args.ov.query_t, "Known t");

    CLI::App* tree = app.add_subcommand(
        "family-tree", "Analogical transfer between two family trees");
    add_common_options(tree, args);
    tree->add_option("--probe", args.ov.probe, "Member to transport");

    CLI::App* kernel = app.add_subcommand(
        "kernel", "Render one cell's spatial activation pattern");
    add_common_options(kernel, args);
    kernel->add_option("--scale", args.ov.kernel_scale, "Scale index");
    kernel->add_option("--orientation", args.ov.kernel_orientation,
                       "Orientation index");
    kernel->add_option("--i", args.ov.kernel_i, "Element index, first axis");
    kernel->add_option("--j", args.ov.kernel_j, "Element index, second axis");
    kernel->add_option("--k", args.ov.kernel_k, "Element index, third axis");
    kernel->add_option("--field-size", args.ov.field_size, "Samples per side");
    kernel->add_option("--extent", args.ov.kernel_extent,
                       "Half-width of the sampled square, pixels");

    CLI::App* rot = app.add_subcommand(
        "rotate", "Rotate an encoded position and decode the result");
    add_common_options(rot, args);
    rot->add_option("--x", args.ov.rotate_x, "Start x");
    rot->add_option("--y", args.ov.rotate_y, "Start y");
    rot->add_option("--angle", args.ov.rotate_angle_deg, "Rotation, degrees");
    rot->add_option("--extent", args.ov.rotate_extent,
                    "Half-width of the decode lattice, pixels");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (pi->parsed()) return run_path_integration_cmd(args);
        if (scene->parsed()) return run_scene_cmd(args);
        if (tree->parsed()) return run_family_tree_cmd(args);
        if (kernel->parsed()) return run_kernel_cmd(args);
        if (rot->parsed()) return run_rotate_cmd(args);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
