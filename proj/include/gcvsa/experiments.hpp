#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gcvsa/codebook.hpp"
#include "gcvsa/resonator.hpp"
#include "gcvsa/rng.hpp"
#include "gcvsa/spatial.hpp"
#include "gcvsa/tensor.hpp"

namespace gcvsa::experiments {

// ---------------------------------------------------------------------------
// Path integration

struct TrajectoryParams {
    double gamma = 0.8;       // velocity smoothing, in [0, 1)
    double max_speed = 2.0;   // pixels per step
    double sigma = 1.0;       // white-noise scale
    std::optional<Point2D> start;  // defaults to the arena center
};

/// positions[t+1] == positions[t] + velocities[t]; every position stays in
/// the arena (reflecting walls flip the offending velocity component).
struct Trajectory {
    std::vector<Point2D> positions;   // steps + 1
    std::vector<Point2D> velocities;  // steps
};

Trajectory generate_trajectory(const Rect& arena, int steps, Rng& rng,
                               const TrajectoryParams& params = {});

struct PathIntegrationResult {
    Trajectory trajectory;
    std::vector<Point2D> decoded;  // one per position
    double mse = 0.0;              // mean squared decode error, px^2
    Field2D final_map;             // similarity map of the final state
};

/// Drive a state vector with per-step displacement encodings and decode every
/// step against a lattice codebook over the arena. Geometry comes from
/// cfg.seed; `seed` drives the trajectory noise.
PathIntegrationResult run_path_integration(const GridConfig& cfg,
                                           const Rect& arena, int steps,
                                           std::uint64_t seed,
                                           const TrajectoryParams& params = {},
                                           double lattice_step = 1.0);

/// Same, but over a caller-supplied trajectory.
PathIntegrationResult integrate_trajectory(const GridConfig& cfg,
                                           const Rect& arena,
                                           const Trajectory& traj,
                                           double lattice_step = 1.0);

// ---------------------------------------------------------------------------
// Scene memory

struct SceneItem {
    std::string identity;
    double x = 0.0;
    double y = 0.0;
    double t = 0.0;
};

/// Shared context for one scene: identity symbols plus coordinate and time
/// factor codebooks over the given extents.
struct SceneSetup {
    ModuleGeometry geom;
    Codebook identities;
    Codebook x_factors;  // keys "0".."nx-1"
    Codebook y_factors;
    Codebook t_factors;
    PhaseTensor t_generator;
    int nx = 0, ny = 0, nt = 0;
};

/// Draw identity symbols (in list order) and the time-axis generator from
/// `seed`; geometry comes from cfg.seed.
SceneSetup make_scene_setup(const GridConfig& cfg,
                            const std::vector<std::string>& identity_names,
                            int nx, int ny, int nt, std::uint64_t seed);

/// Vector for one item: identity bound with the x, y and t factor powers.
GcTensor encode_item(const SceneSetup& setup, const SceneItem& item);

/// Bundle of all item vectors. Throws on unknown identities or coordinates
/// outside the codebook extents.
GcTensor encode_scene(const SceneSetup& setup,
                      const std::vector<SceneItem>& items);

/// Cue with any subset of features known. Unknown features are recovered by
/// cleanup (one unknown) or by the resonator (two or more).
struct SceneQuery {
    std::optional<std::string> identity;
    std::optional<double> x, y, t;
};

struct SceneAnswer {
    std::optional<std::string> identity;
    std::optional<double> x, y, t;
    double confidence = 0.0;
    bool low_confidence = false;
    std::optional<ResonatorState> resonator;
};

/// Confidence below this flags the answer as unreliable (absent cue).
inline constexpr double kLowConfidence = 0.2;

SceneAnswer query_scene(const SceneSetup& setup, const GcTensor& scene,
                        const SceneQuery& query, int max_iter = 50);

// ---------------------------------------------------------------------------
// Family-tree analogy

/// Path strings over {L, R}; "" names the root. Paths must be prefix-closed
/// and names unique.
using FamilyTree = std::map<std::string, std::string>;

void validate_tree(const FamilyTree& tree);

/// The two worked five-person trees (roots Alice and Fred).
std::pair<FamilyTree, FamilyTree> default_family_trees();

struct TreeAnalogyResult {
    std::string answer;
    std::vector<std::pair<std::string, double>> profile;
};

/// Encode both trees with shared direction symbols (edge at depth d uses the
/// direction vector orientation-permuted d-1 steps), derive the tree-to-tree
/// mapping by unbinding, transport the probe name through it and clean up
/// against the second tree's names. Direction and name symbols are drawn
/// fresh from `seed`.
TreeAnalogyResult run_family_tree_analogy(const FamilyTree& tree_a,
                                          const FamilyTree& tree_b,
                                          const std::string& probe,
                                          const GridConfig& cfg,
                                          std::uint64_t seed);

}  // namespace gcvsa::experiments
