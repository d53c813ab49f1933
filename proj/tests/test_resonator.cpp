#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "gcvsa/core.hpp"
#include "gcvsa/resonator.hpp"

using namespace gcvsa;

namespace {

double max_abs_diff(const GcTensor& a, const GcTensor& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
    return worst;
}

Codebook make_random_book(const GridConfig& cfg, int count, uint64_t seed,
                          const std::string& prefix) {
    Codebook cb(cfg);
    Rng rng(seed);
    for (int i = 0; i < count; ++i)
        cb.add(prefix + std::to_string(i), random_symbol(cfg, rng));
    return cb;
}

}  // namespace

TEST_CASE("normalize_to_pure") {
    GridConfig cfg;
    Rng rng(12);

    SUBCASE("pure vectors are fixed points") {
        const GcTensor v = random_symbol(cfg, rng);
        CHECK(max_abs_diff(normalize_to_pure(v), v) < 1e-9);
    }

    SUBCASE("scaling is removed") {
        const GcTensor v = random_symbol(cfg, rng);
        const GcTensor vs[] = {v};
        const double ws[] = {3.5};
        const GcTensor scaled = bundle(std::span<const GcTensor>(vs, 1),
                                       std::span<const double>(ws, 1));
        CHECK(max_abs_diff(normalize_to_pure(scaled), v) < 1e-9);
    }

    SUBCASE("the output is always pure") {
        const GcTensor a = random_symbol(cfg, rng);
        const GcTensor b = random_symbol(cfg, rng);
        const GcTensor mix = bundle({a, b});
        const GcTensor p = normalize_to_pure(mix);
        CHECK(is_pure(p, 1e-6));
        // The dominant component survives projection.
        CHECK(cosine_similarity(p, a) > 0.3);
    }
}

TEST_CASE("exhaustive check on a small factorization problem") {
    // Every (i, j) pair in a 10 x 10 product space, against a brute-force
    // argmax over all 100 candidate bindings.
    GridConfig cfg;
    cfg.n_s = 2;
    cfg.n_theta = 7;  // smaller space keeps the loop fast
    const Codebook ca = make_random_book(cfg, 10, 51, "a");
    const Codebook cb = make_random_book(cfg, 10, 52, "b");
    const std::vector<const Codebook*> books{&ca, &cb};

    int resonator_correct = 0;
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) {
            const GcTensor composite = bind(ca.entry(i), cb.entry(j));

            // Oracle: try every pair directly.
            int best_i = -1, best_j = -1;
            double best = -2.0;
            for (int p = 0; p < 10; ++p)
                for (int q = 0; q < 10; ++q) {
                    const double s = cosine_similarity(
                        composite, bind(ca.entry(p), cb.entry(q)));
                    if (s > best) {
                        best = s;
                        best_i = p;
                        best_j = q;
                    }
                }
            REQUIRE(best_i == i);
            REQUIRE(best_j == j);

            const ResonatorState st = factorize(composite, books);
            if (st.converged && st.key_indices[0] == static_cast<std::size_t>(i) &&
                st.key_indices[1] == static_cast<std::size_t>(j))
                ++resonator_correct;
        }
    // At this deliberately small element count crosstalk is strong; the
    // resonator still matches exhaustive search on the vast majority
    // (measured: 92/100).
    CAPTURE(resonator_correct);
    CHECK(resonator_correct >= 85);
}

TEST_CASE("three-factor recovery at production size") {
    GridConfig cfg;
    const int sizes[3] = {16, 16, 8};
    int correct = 0;
    const int trials = 50;
    for (int trial = 0; trial < trials; ++trial) {
        const Codebook c0 = make_random_book(cfg, sizes[0], 1000 + trial, "x");
        const Codebook c1 = make_random_book(cfg, sizes[1], 2000 + trial, "y");
        const Codebook c2 = make_random_book(cfg, sizes[2], 3000 + trial, "z");
        Rng pick(4000 + trial);
        const auto i0 = static_cast<std::size_t>(pick.uniform() * sizes[0]);
        const auto i1 = static_cast<std::size_t>(pick.uniform() * sizes[1]);
        const auto i2 = static_cast<std::size_t>(pick.uniform() * sizes[2]);
        const GcTensor composite =
            bind(bind(c0.entry(i0), c1.entry(i1)), c2.entry(i2));
        const ResonatorState st =
            factorize(composite, {&c0, &c1, &c2});
        if (st.converged && st.key_indices[0] == i0 && st.key_indices[1] == i1 &&
            st.key_indices[2] == i2)
            ++correct;
    }
    CAPTURE(correct);
    CHECK(correct >= 45);  // measured: typically all 50
}

TEST_CASE("the state reports what happened") {
    GridConfig cfg;
    const Codebook ca = make_random_book(cfg, 8, 61, "a");
    const Codebook cb = make_random_book(cfg, 8, 62, "b");
    const GcTensor composite = bind(ca.entry(3), cb.entry(5));
    const ResonatorState st = factorize(composite, {&ca, &cb});

    REQUIRE(st.converged);
    REQUIRE(st.estimates.size() == 2);
    REQUIRE(st.keys.size() == 2);
    CHECK(st.keys[0] == "a3");
    CHECK(st.keys[1] == "b5");
    // Estimates are similarity-weighted blends, so a little crosstalk remains
    // even after the keys have locked in.
    CHECK(st.similarities[0] > 0.99);
    CHECK(st.similarities[1] > 0.99);
    CHECK(st.iterations >= 1);
    REQUIRE(st.trace.size() == static_cast<std::size_t>(st.iterations));
    for (const auto& it : st.trace) {
        REQUIRE(it.size() == 2);
        CHECK(it[0].size() == 8);
        CHECK(it[1].size() == 8);
    }
    CHECK(cosine_similarity(st.estimates[0], ca.entry(3)) > 0.99);
}

TEST_CASE("factorization is deterministic") {
    GridConfig cfg;
    const Codebook ca = make_random_book(cfg, 12, 71, "a");
    const Codebook cb = make_random_book(cfg, 12, 72, "b");
    const GcTensor composite = bind(ca.entry(7), cb.entry(2));
    const ResonatorState s1 = factorize(composite, {&ca, &cb});
    const ResonatorState s2 = factorize(composite, {&ca, &cb});
    CHECK(s1.iterations == s2.iterations);
    CHECK(s1.keys == s2.keys);
    REQUIRE(s1.estimates.size() == s2.estimates.size());
    for (std::size_t f = 0; f < s1.estimates.size(); ++f)
        CHECK(max_abs_diff(s1.estimates[f], s2.estimates[f]) == 0.0);
}

TEST_CASE("correct initial estimates are a fixed point") {
    GridConfig cfg;
    const Codebook ca = make_random_book(cfg, 10, 81, "a");
    const Codebook cb = make_random_book(cfg, 10, 82, "b");
    const GcTensor composite = bind(ca.entry(4), cb.entry(9));
    FactorizeOptions opts;
    opts.initial = std::vector<GcTensor>{ca.entry(4), cb.entry(9)};
    const ResonatorState st = factorize(composite, {&ca, &cb}, opts);
    CHECK(st.converged);
    CHECK(st.keys[0] == "a4");
    CHECK(st.keys[1] == "b9");
    CHECK(st.iterations <= 4);
}

TEST_CASE("an unrelated composite does not fake convergence confidence") {
    GridConfig cfg;
    const Codebook ca = make_random_book(cfg, 10, 91, "a");
    const Codebook cb = make_random_book(cfg, 10, 92, "b");
    Rng rng(93);
    // A composite with no relation to either codebook.
    const GcTensor stranger = bind(random_symbol(cfg, rng), random_symbol(cfg, rng));
    const ResonatorState st = factorize(stranger, {&ca, &cb});
    // Whatever keys it settles on, the reconstruction must be poor.
    const GcTensor rebuilt = bind(st.estimates[0], st.estimates[1]);
    CHECK(cosine_similarity(rebuilt, stranger) < 0.5);
}

TEST_CASE("degenerate single-entry codebooks") {
    GridConfig cfg;
    Rng rng(95);
    Codebook ca(cfg), cb(cfg);
    ca.add("only_a", random_symbol(cfg, rng));
    cb.add("only_b", random_symbol(cfg, rng));
    const GcTensor composite = bind(ca.entry(0), cb.entry(0));
    const ResonatorState st = factorize(composite, {&ca, &cb});
    CHECK(st.converged);
    CHECK(st.keys[0] == "only_a");
    CHECK(st.keys[1] == "only_b");
}

TEST_CASE("factorize validates its inputs") {
    GridConfig cfg;
    const Codebook ca = make_random_book(cfg, 4, 97, "a");
    const Codebook cb = make_random_book(cfg, 4, 98, "b");
    const GcTensor composite = bind(ca.entry(0), cb.entry(0));

    CHECK_THROWS_AS(factorize(composite, {&ca}), std::invalid_argument);
    CHECK_THROWS_AS(factorize(GcTensor(cfg), {&ca, &cb}),
                    std::invalid_argument);

    Codebook empty(cfg);
    CHECK_THROWS_AS(factorize(composite, {&ca, &empty}),
                    std::invalid_argument);

    FactorizeOptions bad;
    bad.max_iter = 0;
    CHECK_THROWS_AS(factorize(composite, {&ca, &cb}, bad),
                    std::invalid_argument);

    FactorizeOptions wrong_count;
    wrong_count.initial = std::vector<GcTensor>{composite};
    CHECK_THROWS_AS(factorize(composite, {&ca, &cb}, wrong_count),
                    std::invalid_argument);
}
