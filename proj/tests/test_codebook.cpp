#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "gcvsa/codebook.hpp"
#include "gcvsa/core.hpp"

using namespace gcvsa;

namespace {

Codebook make_random_book(const GridConfig& cfg, int count, uint64_t seed) {
    Codebook cb(cfg);
    Rng rng(seed);
    for (int i = 0; i < count; ++i)
        cb.add("sym" + std::to_string(i), random_symbol(cfg, rng));
    return cb;
}

}  // namespace

TEST_CASE("cleanup retrieves every stored entry") {
    GridConfig cfg;
    const Codebook cb = make_random_book(cfg, 50, 404);
    Rng rng(404);
    for (int i = 0; i < 50; ++i) {
        const GcTensor v = random_symbol(cfg, rng);
        const auto [key, sim] = cb.cleanup(v);
        CHECK(key == "sym" + std::to_string(i));
        CHECK(sim == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("cleanup survives additive crosstalk") {
    GridConfig cfg;
    const Codebook cb = make_random_book(cfg, 50, 808);
    Rng rng(808);
    std::vector<GcTensor> symbols;
    for (int i = 0; i < 50; ++i) symbols.push_back(random_symbol(cfg, rng));

    Rng noise_rng(1);
    for (int i = 0; i < 50; i += 7) {
        const GcTensor distractor = random_symbol(cfg, noise_rng);
        const GcTensor vs[] = {symbols[i], distractor};
        const double ws[] = {1.0, 0.5};
        const GcTensor noisy = bundle(std::span<const GcTensor>(vs, 2),
                                      std::span<const double>(ws, 2));
        CHECK(cb.cleanup(noisy).first == "sym" + std::to_string(i));
    }
}

TEST_CASE("exact ties resolve to the lowest index") {
    GridConfig cfg;
    Rng rng(11);
    const GcTensor v = random_symbol(cfg, rng);
    Codebook cb(cfg);
    cb.add("later_is_equal", v);
    cb.add("same_content", v);
    CHECK(cb.cleanup(v).first == "later_is_equal");
    CHECK(cb.cleanup_index(v) == 0);
}

TEST_CASE("similarities and readout follow insertion order") {
    GridConfig cfg;
    const Codebook cb = make_random_book(cfg, 5, 77);
    REQUIRE(cb.size() == 5);
    CHECK(cb.dim() == cfg.tensor_size());
    CHECK(cb.keys()[3] == "sym3");
    CHECK(cb.index_of("sym2").value() == 2);
    CHECK_FALSE(cb.index_of("missing").has_value());

    const GcTensor q = cb.entry(2);
    const auto sims = cb.similarities(q);
    const auto pairs = cb.readout(q);
    REQUIRE(sims.size() == 5);
    REQUIRE(pairs.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(pairs[i].first == cb.keys()[i]);
        CHECK(pairs[i].second == sims[i]);
    }
    CHECK(sims[2] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("superpose mixes rows by weight") {
    GridConfig cfg;
    const Codebook cb = make_random_book(cfg, 4, 99);

    SUBCASE("one-hot weights reproduce a row") {
        const double w[] = {0.0, 0.0, 1.0, 0.0};
        const GcTensor got = cb.superpose(w);
        const GcTensor want = cb.entry(2);
        for (std::size_t i = 0; i < got.size(); ++i)
            CHECK(got.data()[i] == want.data()[i]);
    }

    SUBCASE("all-zero weights give the zero tensor") {
        const double w[] = {0.0, 0.0, 0.0, 0.0};
        const GcTensor got = cb.superpose(w);
        for (double x : got.data()) CHECK(x == 0.0);
    }

    SUBCASE("weight count must match") {
        const double w[] = {1.0, 2.0};
        CHECK_THROWS_AS(cb.superpose(w), std::invalid_argument);
    }
}

TEST_CASE("save and load round trip") {
    GridConfig cfg;
    cfg.seed = 321;
    const Codebook cb = make_random_book(cfg, 12, 2468);
    const std::string path = "codebook_roundtrip.gcvc";
    cb.save(path);

    const Codebook back = Codebook::load(path);
    CHECK(back.config() == cfg);
    REQUIRE(back.size() == cb.size());
    CHECK(back.keys() == cb.keys());
    for (std::size_t i = 0; i < cb.size(); ++i) {
        const GcTensor a = cb.entry(i);
        const GcTensor b = back.entry(i);
        for (std::size_t j = 0; j < a.size(); ++j)
            CHECK(a.data()[j] == b.data()[j]);
    }
    std::remove(path.c_str());
}

TEST_CASE("load rejects damaged containers") {
    GridConfig cfg;
    const Codebook cb = make_random_book(cfg, 3, 1);
    const std::string path = "codebook_damaged.gcvc";
    cb.save(path);

    SUBCASE("truncation") {
        std::ifstream in(path, std::ios::binary);
        std::string bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
        in.close();
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size() / 2));
        out.close();
        CHECK_THROWS_AS(Codebook::load(path), std::runtime_error);
    }

    SUBCASE("wrong magic") {
        std::fstream f(path, std::ios::binary | std::ios::in | std::ios::out);
        f.seekp(0);
        f.write("NOPE", 4);
        f.close();
        CHECK_THROWS_AS(Codebook::load(path), std::runtime_error);
    }

    SUBCASE("missing file") {
        CHECK_THROWS_AS(Codebook::load("does_not_exist.gcvc"),
                        std::runtime_error);
    }

    std::remove(path.c_str());
}

TEST_CASE("add validates its inputs") {
    GridConfig cfg;
    Codebook cb(cfg);
    Rng rng(5);
    const GcTensor v = random_symbol(cfg, rng);
    cb.add("a", v);
    CHECK_THROWS_AS(cb.add("a", v), std::invalid_argument);
    CHECK_THROWS_AS(cb.add("zero", GcTensor(cfg)), std::invalid_argument);

    GridConfig other;
    other.n_s = 2;
    CHECK_THROWS_AS(cb.add("mismatch", GcTensor(other)), std::invalid_argument);

    Codebook empty(cfg);
    CHECK_THROWS_AS(empty.similarities(v), std::invalid_argument);
    CHECK_THROWS_AS(cb.similarities(GcTensor(cfg)), std::invalid_argument);
}
