#include "gcvsa/experiments.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "gcvsa/core.hpp"
#include "gcvsa/rotation.hpp"

namespace gcvsa::experiments {

namespace {

double reflect_into(double q, double lo, double hi, bool* flipped) {
    // Fold back into [lo, hi]; each fold flips the travel direction.
    while (q < lo || q > hi) {
        if (q < lo) q = 2.0 * lo - q;
        if (q > hi) q = 2.0 * hi - q;
        *flipped = !*flipped;
    }
    return q;
}

}  // namespace

Trajectory generate_trajectory(const Rect& arena, int steps, Rng& rng,
                               const TrajectoryParams& params) {
    if (steps < 0) throw std::invalid_argument("trajectory: negative step count");
    if (!(params.gamma >= 0.0 && params.gamma < 1.0))
        throw std::invalid_argument("trajectory: gamma must be in [0, 1)");
    if (!(params.max_speed > 0.0))
        throw std::invalid_argument("trajectory: max_speed must be > 0");
    if (params.sigma < 0.0)
        throw std::invalid_argument("trajectory: sigma must be >= 0");
    if (arena.xmax < arena.xmin || arena.ymax < arena.ymin)
        throw std::invalid_argument("trajectory: empty arena");

    Point2D p = params.start.value_or(Point2D{(arena.xmin + arena.xmax) / 2.0,
                                              (arena.ymin + arena.ymax) / 2.0});
    if (p.x < arena.xmin || p.x > arena.xmax || p.y < arena.ymin ||
        p.y > arena.ymax)
        throw std::invalid_argument("trajectory: start outside arena");

    Trajectory traj;
    traj.positions.reserve(steps + 1);
    traj.velocities.reserve(steps);
    traj.positions.push_back(p);

    Point2D v{0.0, 0.0};
    for (int t = 0; t < steps; ++t) {
        v.x = params.gamma * v.x +
              (1.0 - params.gamma) * params.sigma * rng.gaussian();
        v.y = params.gamma * v.y +
              (1.0 - params.gamma) * params.sigma * rng.gaussian();
        const double speed = std::hypot(v.x, v.y);
        if (speed > params.max_speed) {
            const double f = params.max_speed / speed;
            v.x *= f;
            v.y *= f;
        }
        bool flip_x = false, flip_y = false;
        Point2D q{reflect_into(p.x + v.x, arena.xmin, arena.xmax, &flip_x),
                  reflect_into(p.y + v.y, arena.ymin, arena.ymax, &flip_y)};
        // The stored velocity is the realized displacement.
        traj.velocities.push_back({q.x - p.x, q.y - p.y});
        if (flip_x) v.x = -v.x;
        if (flip_y) v.y = -v.y;
        p = q;
        traj.positions.push_back(p);
    }
    return traj;
}

PathIntegrationResult integrate_trajectory(const GridConfig& cfg,
                                           const Rect& arena,
                                           const Trajectory& traj,
                                           double lattice_step) {
    if (traj.positions.empty())
        throw std::invalid_argument("path integration: empty trajectory");
    const ModuleGeometry geom(cfg);
    const PositionCodebook cb(arena, lattice_step, geom);

    PathIntegrationResult res;
    res.trajectory = traj;
    res.decoded.reserve(traj.positions.size());

    GcTensor state = encode_position(traj.positions[0], geom);
    res.decoded.push_back(cb.decode(state));
    for (std::size_t t = 0; t < traj.velocities.size(); ++t) {
        state = bind(state, encode_position(
                                {traj.velocities[t].x, traj.velocities[t].y},
                                geom));
        res.decoded.push_back(cb.decode(state));
    }

    double acc = 0.0;
    for (std::size_t t = 0; t < traj.positions.size(); ++t) {
        const double dx = res.decoded[t].x - traj.positions[t].x;
        const double dy = res.decoded[t].y - traj.positions[t].y;
        acc += dx * dx + dy * dy;
    }
    res.mse = acc / static_cast<double>(traj.positions.size());
    res.final_map = cb.similarity_map(state);
    return res;
}

PathIntegrationResult run_path_integration(const GridConfig& cfg,
                                           const Rect& arena, int steps,
                                           std::uint64_t seed,
                                           const TrajectoryParams& params,
                                           double lattice_step) {
    Rng rng(seed);
    const Trajectory traj = generate_trajectory(arena, steps, rng, params);
    return integrate_trajectory(cfg, arena, traj, lattice_step);
}

// ---------------------------------------------------------------------------

SceneSetup make_scene_setup(const GridConfig& cfg,
                            const std::vector<std::string>& identity_names,
                            int nx, int ny, int nt, std::uint64_t seed) {
    if (identity_names.empty())
        throw std::invalid_argument("scene: no identity names");
    if (nx < 1 || ny < 1 || nt < 1)
        throw std::invalid_argument("scene: extents must be >= 1");

    SceneSetup setup{ModuleGeometry(cfg), Codebook(cfg), Codebook(cfg),
                     Codebook(cfg),       Codebook(cfg), PhaseTensor(cfg),
                     nx,                  ny,            nt};
    Rng rng(seed);
    for (const auto& name : identity_names)
        setup.identities.add(name, random_symbol(cfg, rng));
    setup.t_generator = random_phases(cfg, rng);

    const GeneratorPair gen = make_generators(setup.geom);
    for (int i = 0; i < nx; ++i)
        setup.x_factors.add(std::to_string(i),
                            materialize(fractional_power(gen.gx, i)));
    for (int j = 0; j < ny; ++j)
        setup.y_factors.add(std::to_string(j),
                            materialize(fractional_power(gen.gy, j)));
    for (int k = 0; k < nt; ++k)
        setup.t_factors.add(std::to_string(k),
                            materialize(fractional_power(setup.t_generator, k)));
    return setup;
}

GcTensor encode_item(const SceneSetup& setup, const SceneItem& item) {
    const auto idx = setup.identities.index_of(item.identity);
    if (!idx)
        throw std::invalid_argument("scene: unknown identity: " + item.identity);
    if (item.x < 0 || item.x > setup.nx - 1 || item.y < 0 ||
        item.y > setup.ny - 1 || item.t < 0 || item.t > setup.nt - 1)
        throw std::invalid_argument("scene: item outside extents");
    const GeneratorPair gen = make_generators(setup.geom);
    GcTensor v = setup.identities.entry(*idx);
    v = bind(v, materialize(fractional_power(gen.gx, item.x)));
    v = bind(v, materialize(fractional_power(gen.gy, item.y)));
    v = bind(v, materialize(fractional_power(setup.t_generator, item.t)));
    return v;
}

GcTensor encode_scene(const SceneSetup& setup,
                      const std::vector<SceneItem>& items) {
    if (items.empty()) throw std::invalid_argument("scene: no items");
    GcTensor acc(setup.geom.config());
    for (const auto& item : items) {
        const GcTensor v = encode_item(setup, item);
        auto& dst = acc.data();
        const auto& src = v.data();
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
    }
    return acc;
}

SceneAnswer query_scene(const SceneSetup& setup, const GcTensor& scene,
                        const SceneQuery& query, int max_iter) {
    const GeneratorPair gen = make_generators(setup.geom);

    std::optional<GcTensor> cue;
    auto fold = [&cue](GcTensor v) {
        cue = cue ? bind(*cue, v) : std::move(v);
    };
    if (query.identity) {
        const auto idx = setup.identities.index_of(*query.identity);
        if (!idx)
            throw std::invalid_argument("scene: unknown identity: " +
                                        *query.identity);
        fold(setup.identities.entry(*idx));
    }
    if (query.x) fold(materialize(fractional_power(gen.gx, *query.x)));
    if (query.y) fold(materialize(fractional_power(gen.gy, *query.y)));
    if (query.t) fold(materialize(fractional_power(setup.t_generator, *query.t)));

    struct Unknown {
        char which;  // 'i', 'x', 'y', 't'
        const Codebook* cb;
    };
    std::vector<Unknown> unknowns;
    if (!query.identity) unknowns.push_back({'i', &setup.identities});
    if (!query.x) unknowns.push_back({'x', &setup.x_factors});
    if (!query.y) unknowns.push_back({'y', &setup.y_factors});
    if (!query.t) unknowns.push_back({'t', &setup.t_factors});

    SceneAnswer ans;
    ans.identity = query.identity;
    ans.x = query.x;
    ans.y = query.y;
    ans.t = query.t;

    if (unknowns.empty()) {
        // Nothing to recover; report how strongly the fully specified item is
        // present in the scene.
        ans.confidence = cosine_similarity(scene, *cue);
        ans.low_confidence = ans.confidence < kLowConfidence;
        return ans;
    }

    const GcTensor residual = cue ? unbind(scene, *cue) : scene;
    auto assign = [&ans](char which, const std::string& key) {
        switch (which) {
            case 'i': ans.identity = key; break;
            case 'x': ans.x = std::stod(key); break;
            case 'y': ans.y = std::stod(key); break;
            case 't': ans.t = std::stod(key); break;
        }
    };

    if (unknowns.size() == 1) {
        const auto [key, sim] = unknowns[0].cb->cleanup(residual);
        assign(unknowns[0].which, key);
        ans.confidence = sim;
        ans.low_confidence = sim < kLowConfidence;
        return ans;
    }

    std::vector<const Codebook*> cbs;
    for (const auto& u : unknowns) cbs.push_back(u.cb);
    FactorizeOptions opts;
    opts.max_iter = max_iter;
    ResonatorState st = factorize(residual, cbs, opts);
    GcTensor recovered = cbs[0]->entry(st.key_indices[0]);
    for (std::size_t f = 1; f < cbs.size(); ++f)
        recovered = bind(recovered, cbs[f]->entry(st.key_indices[f]));
    ans.confidence = cosine_similarity(residual, recovered);
    ans.low_confidence = !st.converged || ans.confidence < kLowConfidence;
    for (std::size_t f = 0; f < unknowns.size(); ++f)
        assign(unknowns[f].which, st.keys[f]);
    ans.resonator = std::move(st);
    return ans;
}

// ---------------------------------------------------------------------------

void validate_tree(const FamilyTree& tree) {
    if (!tree.count("")) throw std::invalid_argument("tree: missing root");
    std::set<std::string> names;
    for (const auto& [path, name] : tree) {
        for (char c : path)
            if (c != 'L' && c != 'R')
                throw std::invalid_argument("tree: bad path: " + path);
        if (!path.empty() &&
            !tree.count(path.substr(0, path.size() - 1)))
            throw std::invalid_argument("tree: orphan path: " + path);
        if (!names.insert(name).second)
            throw std::invalid_argument("tree: duplicate name: " + name);
    }
}

std::pair<FamilyTree, FamilyTree> default_family_trees() {
    FamilyTree a{{"", "Alice"},
                 {"L", "Bob"},
                 {"R", "Charles"},
                 {"LL", "Dora"},
                 {"LR", "Emil"}};
    FamilyTree b{{"", "Fred"},
                 {"L", "George"},
                 {"R", "Harry"},
                 {"LL", "Igor"},
                 {"LR", "James"}};
    return {std::move(a), std::move(b)};
}

namespace {

GcTensor encode_tree(const FamilyTree& tree,
                     const std::map<std::string, GcTensor>& names,
                     const GcTensor& left, const GcTensor& right) {
    std::optional<GcTensor> acc;
    for (const auto& [path, name] : tree) {
        GcTensor v = names.at(name);
        for (std::size_t d = 0; d < path.size(); ++d) {
            const GcTensor& dir = (path[d] == 'L') ? left : right;
            v = bind(v, permute_orientation(dir, static_cast<int>(d)));
        }
        if (!acc) {
            acc = std::move(v);
        } else {
            auto& dst = acc->data();
            const auto& src = v.data();
            for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
        }
    }
    return *acc;
}

}  // namespace

TreeAnalogyResult run_family_tree_analogy(const FamilyTree& tree_a,
                                          const FamilyTree& tree_b,
                                          const std::string& probe,
                                          const GridConfig& cfg,
                                          std::uint64_t seed) {
    validate_tree(tree_a);
    validate_tree(tree_b);
    if (tree_a.size() != tree_b.size())
        throw std::invalid_argument("tree analogy: mismatched tree sizes");
    for (const auto& [path, name] : tree_a)
        if (!tree_b.count(path))
            throw std::invalid_argument("tree analogy: structures differ at: " +
                                        path);

    Rng rng(seed);
    const GcTensor left = random_symbol(cfg, rng);
    const GcTensor right = random_symbol(cfg, rng);
    std::map<std::string, GcTensor> names;
    for (const auto& [path, name] : tree_a)
        names.emplace(name, random_symbol(cfg, rng));
    for (const auto& [path, name] : tree_b)
        names.emplace(name, random_symbol(cfg, rng));

    bool probe_found = false;
    for (const auto& [path, name] : tree_a)
        if (name == probe) probe_found = true;
    if (!probe_found)
        throw std::invalid_argument("tree analogy: probe not in first tree: " +
                                    probe);

    const GcTensor fa = encode_tree(tree_a, names, left, right);
    const GcTensor fb = encode_tree(tree_b, names, left, right);
    const GcTensor mapping = unbind(fb, fa);

    Codebook targets(cfg);
    for (const auto& [path, name] : tree_b) targets.add(name, names.at(name));

    const GcTensor moved = bind(names.at(probe), mapping);
    TreeAnalogyResult res;
    res.profile = targets.readout(moved);
    res.answer = targets.cleanup(moved).first;
    return res;
}

}  // namespace gcvsa::experiments
