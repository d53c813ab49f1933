#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "gcvsa/core.hpp"
#include "gcvsa/experiments.hpp"

using namespace gcvsa;
using namespace gcvsa::experiments;

TEST_CASE("trajectory invariants") {
    const Rect arena{0.0, 0.0, 64.0, 64.0};
    Rng rng(42);
    const Trajectory traj = generate_trajectory(arena, 500, rng);

    REQUIRE(traj.positions.size() == 501);
    REQUIRE(traj.velocities.size() == 500);

    for (int t = 0; t < 500; ++t) {
        CHECK(traj.positions[t + 1].x ==
              doctest::Approx(traj.positions[t].x + traj.velocities[t].x)
                  .epsilon(1e-12));
        CHECK(traj.positions[t + 1].y ==
              doctest::Approx(traj.positions[t].y + traj.velocities[t].y)
                  .epsilon(1e-12));
        CHECK(std::hypot(traj.velocities[t].x, traj.velocities[t].y) <=
              2.0 + 1e-12);
    }
    for (const Point2D& p : traj.positions) {
        CHECK(p.x >= 0.0);
        CHECK(p.x <= 64.0);
        CHECK(p.y >= 0.0);
        CHECK(p.y <= 64.0);
    }
    CHECK(traj.positions[0].x == 32.0);
    CHECK(traj.positions[0].y == 32.0);
}

TEST_CASE("trajectory options and validation") {
    const Rect arena{0.0, 0.0, 64.0, 64.0};

    SUBCASE("same seed, same path") {
        Rng r1(9), r2(9);
        const Trajectory a = generate_trajectory(arena, 50, r1);
        const Trajectory b = generate_trajectory(arena, 50, r2);
        for (int t = 0; t <= 50; ++t) {
            CHECK(a.positions[t].x == b.positions[t].x);
            CHECK(a.positions[t].y == b.positions[t].y);
        }
    }

    SUBCASE("explicit start") {
        Rng rng(1);
        TrajectoryParams p;
        p.start = Point2D{3.0, 60.0};
        const Trajectory traj = generate_trajectory(arena, 10, rng, p);
        CHECK(traj.positions[0].x == 3.0);
        CHECK(traj.positions[0].y == 60.0);
    }

    SUBCASE("zero steps") {
        Rng rng(1);
        const Trajectory traj = generate_trajectory(arena, 0, rng);
        CHECK(traj.positions.size() == 1);
        CHECK(traj.velocities.empty());
    }

    SUBCASE("bad arguments") {
        Rng rng(1);
        TrajectoryParams p;
        CHECK_THROWS_AS(generate_trajectory(arena, -1, rng),
                        std::invalid_argument);
        p.gamma = 1.0;
        CHECK_THROWS_AS(generate_trajectory(arena, 1, rng, p),
                        std::invalid_argument);
        p = {};
        p.max_speed = 0.0;
        CHECK_THROWS_AS(generate_trajectory(arena, 1, rng, p),
                        std::invalid_argument);
        p = {};
        p.start = Point2D{-5.0, 0.0};
        CHECK_THROWS_AS(generate_trajectory(arena, 1, rng, p),
                        std::invalid_argument);
        CHECK_THROWS_AS(
            generate_trajectory(Rect{1.0, 0.0, 0.0, 1.0}, 1, rng),
            std::invalid_argument);
    }
}

TEST_CASE("velocity smoothing shows up as lag-1 correlation") {
    // In a huge arena with a generous speed cap the process is pure AR(1);
    // its lag-1 autocorrelation is gamma.
    const Rect arena{-1e6, -1e6, 1e6, 1e6};
    Rng rng(2718);
    TrajectoryParams p;
    p.gamma = 0.8;
    p.max_speed = 100.0;
    const Trajectory traj = generate_trajectory(arena, 10000, rng, p);

    double mx = 0.0;
    for (const Point2D& v : traj.velocities) mx += v.x;
    mx /= traj.velocities.size();
    double num = 0.0, den = 0.0;
    for (std::size_t t = 0; t + 1 < traj.velocities.size(); ++t) {
        num += (traj.velocities[t].x - mx) * (traj.velocities[t + 1].x - mx);
        den += (traj.velocities[t].x - mx) * (traj.velocities[t].x - mx);
    }
    const double rho = num / den;
    CAPTURE(rho);
    CHECK(rho == doctest::Approx(0.8).epsilon(0.05));
}

TEST_CASE("displacement binding shifts encoded positions exactly") {
    GridConfig cfg;
    cfg.seed = 77;
    const ModuleGeometry geom = make_geometry(cfg);
    const GcTensor at = encode_position({10.0, 20.0}, geom);
    const GcTensor step = encode_position({3.5, -2.25}, geom);
    const GcTensor moved = bind(at, step);
    const GcTensor direct = encode_position({13.5, 17.75}, geom);
    CHECK(cosine_similarity(moved, direct) > 1.0 - 1e-9);
}

TEST_CASE("integration of a hand-built loop is exact") {
    GridConfig cfg;
    cfg.seed = 3;
    const Rect arena{0.0, 0.0, 16.0, 16.0};
    Trajectory traj;
    traj.positions = {{8, 8}, {10, 8}, {10, 11}, {8, 11}, {8, 8}};
    traj.velocities = {{2, 0}, {0, 3}, {-2, 0}, {0, -3}};

    const PathIntegrationResult res = integrate_trajectory(cfg, arena, traj);
    REQUIRE(res.decoded.size() == 5);
    for (std::size_t t = 0; t < 5; ++t) {
        CHECK(res.decoded[t].x == doctest::Approx(traj.positions[t].x));
        CHECK(res.decoded[t].y == doctest::Approx(traj.positions[t].y));
    }
    CHECK(res.mse == 0.0);

    // Standing still keeps the decode pinned.
    Trajectory still;
    still.positions = {{5, 5}, {5, 5}, {5, 5}};
    still.velocities = {{0, 0}, {0, 0}};
    const PathIntegrationResult rs = integrate_trajectory(cfg, arena, still);
    CHECK(rs.mse == 0.0);
}

TEST_CASE("path integration stays accurate over a noisy run") {
    GridConfig cfg;
    cfg.seed = 11;
    const Rect arena{0.0, 0.0, 64.0, 64.0};
    const PathIntegrationResult res =
        run_path_integration(cfg, arena, 100, 31415);

    CHECK(res.decoded.size() == 101);
    CAPTURE(res.mse);
    CHECK(res.mse <= 0.5);

    // The final similarity map peaks where the walk ended.
    const Point2D end = res.trajectory.positions.back();
    const Field2D& m = res.final_map;
    double best = -2.0;
    int bx = -1, by = -1;
    for (int iy = 0; iy < m.ny; ++iy)
        for (int ix = 0; ix < m.nx; ++ix)
            if (m.at(ix, iy) > best) {
                best = m.at(ix, iy);
                bx = ix;
                by = iy;
            }
    CHECK(std::abs(m.x0 + bx * m.step - end.x) <= 1.0);
    CHECK(std::abs(m.y0 + by * m.step - end.y) <= 1.0);
}

TEST_CASE("scene encoding and queries") {
    GridConfig cfg;
    cfg.seed = 21;
    const std::vector<std::string> names{"cup", "book", "lamp", "key", "plant"};
    const SceneSetup setup = make_scene_setup(cfg, names, 8, 8, 4, 555);

    REQUIRE(setup.identities.size() == 5);
    REQUIRE(setup.x_factors.size() == 8);
    REQUIRE(setup.y_factors.size() == 8);
    REQUIRE(setup.t_factors.size() == 4);

    const std::vector<SceneItem> items{{"cup", 1, 2, 0},
                                       {"book", 5, 0, 1},
                                       {"lamp", 3, 7, 2},
                                       {"key", 6, 4, 3},
                                       {"plant", 0, 6, 1}};
    const GcTensor scene = encode_scene(setup, items);

    SUBCASE("bundling order does not matter") {
        std::vector<SceneItem> reversed(items.rbegin(), items.rend());
        const GcTensor other = encode_scene(setup, reversed);
        double worst = 0.0;
        for (std::size_t i = 0; i < scene.size(); ++i)
            worst = std::max(worst,
                             std::abs(scene.data()[i] - other.data()[i]));
        CHECK(worst < 1e-9);
    }

    SUBCASE("identity from full coordinates, one unknown") {
        for (const SceneItem& item : items) {
            SceneQuery q;
            q.x = item.x;
            q.y = item.y;
            q.t = item.t;
            const SceneAnswer a = query_scene(setup, scene, q);
            CHECK(a.identity.value() == item.identity);
            CHECK_FALSE(a.low_confidence);
        }
    }

    SUBCASE("coordinates from identity, three unknowns") {
        for (const SceneItem& item : items) {
            SceneQuery q;
            q.identity = item.identity;
            const SceneAnswer a = query_scene(setup, scene, q);
            REQUIRE(a.resonator.has_value());
            CHECK(a.x.value() == doctest::Approx(item.x));
            CHECK(a.y.value() == doctest::Approx(item.y));
            CHECK(a.t.value() == doctest::Approx(item.t));
            CHECK_FALSE(a.low_confidence);
        }
    }

    SUBCASE("fully specified probe reports presence") {
        SceneQuery q;
        q.identity = "lamp";
        q.x = 3;
        q.y = 7;
        q.t = 2;
        const SceneAnswer a = query_scene(setup, scene, q);
        CHECK(a.confidence > 0.2);
        CHECK_FALSE(a.low_confidence);

        q.x = 4;  // wrong place
        const SceneAnswer miss = query_scene(setup, scene, q);
        CHECK(miss.confidence < a.confidence);
    }

    SUBCASE("absent cues are flagged") {
        SceneQuery q;
        q.x = 7;
        q.y = 1;
        q.t = 0;  // nothing lives there
        const SceneAnswer a = query_scene(setup, scene, q);
        CHECK(a.confidence < 0.2);
        CHECK(a.low_confidence);
    }

    SUBCASE("item validation") {
        CHECK_THROWS_AS(encode_item(setup, {"ghost", 0, 0, 0}),
                        std::invalid_argument);
        CHECK_THROWS_AS(encode_item(setup, {"cup", 8, 0, 0}),
                        std::invalid_argument);
        CHECK_THROWS_AS(encode_item(setup, {"cup", 0, -1, 0}),
                        std::invalid_argument);
        CHECK_THROWS_AS(encode_scene(setup, {}), std::invalid_argument);
        SceneQuery q;
        q.identity = "ghost";
        CHECK_THROWS_AS(query_scene(setup, scene, q), std::invalid_argument);
    }
}

TEST_CASE("tree validation") {
    auto [a, b] = default_family_trees();
    validate_tree(a);
    validate_tree(b);

    FamilyTree bad = a;
    bad.erase("");
    CHECK_THROWS_AS(validate_tree(bad), std::invalid_argument);

    bad = a;
    bad["LRX"] = "Zoe";
    CHECK_THROWS_AS(validate_tree(bad), std::invalid_argument);

    bad = a;
    bad["RRL"] = "Zoe";  // RR missing
    CHECK_THROWS_AS(validate_tree(bad), std::invalid_argument);

    bad = a;
    bad["RR"] = "Alice";  // duplicate name
    CHECK_THROWS_AS(validate_tree(bad), std::invalid_argument);
}

TEST_CASE("family-tree analogies transport roles") {
    GridConfig cfg;
    const auto [ta, tb] = default_family_trees();

    SUBCASE("every member maps to its counterpart") {
        const std::vector<std::pair<std::string, std::string>> want{
            {"Alice", "Fred"},
            {"Bob", "George"},
            {"Charles", "Harry"},
            {"Dora", "Igor"},
            {"Emil", "James"}};
        for (const auto& [probe, expect] : want) {
            const TreeAnalogyResult res =
                run_family_tree_analogy(ta, tb, probe, cfg, 7);
            CAPTURE(probe);
            CHECK(res.answer == expect);
            CHECK(res.profile.size() == 5);
        }
    }

    SUBCASE("self-analogy is the identity map") {
        for (const std::string probe : {"Alice", "Bob", "Dora"}) {
            const TreeAnalogyResult res =
                run_family_tree_analogy(ta, ta, probe, cfg, 13);
            CHECK(res.answer == probe);
        }
    }

    SUBCASE("structure mismatches are rejected") {
        FamilyTree small = ta;
        small.erase("LR");
        CHECK_THROWS_AS(run_family_tree_analogy(small, tb, "Alice", cfg, 1),
                        std::invalid_argument);
        FamilyTree moved = tb;
        moved.erase("LR");
        moved["RL"] = "James";
        CHECK_THROWS_AS(run_family_tree_analogy(ta, moved, "Alice", cfg, 1),
                        std::invalid_argument);
        CHECK_THROWS_AS(run_family_tree_analogy(ta, tb, "Fred", cfg, 1),
                        std::invalid_argument);
    }
}
