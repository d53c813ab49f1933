#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "gcvsa/io.hpp"

using namespace gcvsa;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("pgm output is exact") {
    Field2D f;
    f.nx = 2;
    f.ny = 2;
    f.x0 = 0.0;
    f.y0 = 0.0;
    f.step = 1.0;
    f.values = {0.0, 0.5, 1.0, 2.0};  // (0,0) (1,0) / (0,1) (1,1)

    const std::string path = "io_test.pgm";
    io::write_pgm(path, f, 0.0, 1.0);
    const std::string bytes = slurp(path);

    // Header, then rows top-down: the +y row (0, 255-clamped) comes first.
    const std::string want = std::string("P5\n2 2\n255\n") +
                             static_cast<char>(255) + static_cast<char>(255) +
                             static_cast<char>(0) + static_cast<char>(128);
    CHECK(bytes == want);
    std::remove(path.c_str());
}

TEST_CASE("field csv layout") {
    Field2D f;
    f.nx = 2;
    f.ny = 1;
    f.x0 = 3.0;
    f.y0 = -1.0;
    f.step = 0.5;
    f.values = {0.25, 4.0};

    const std::string path = "io_field.csv";
    io::write_field_csv(path, f);
    CHECK(slurp(path) == "x,y,value\n3,-1,0.25\n3.5,-1,4\n");
    std::remove(path.c_str());
}

TEST_CASE("trajectory csv layout") {
    experiments::Trajectory traj;
    traj.positions = {{1.0, 2.0}, {1.5, 2.0}};
    traj.velocities = {{0.5, 0.0}};
    const std::vector<Point2D> decoded{{1.0, 2.0}, {2.0, 2.0}};

    const std::string path = "io_traj.csv";
    io::write_trajectory_csv(path, traj, decoded);
    CHECK(slurp(path) == "t,x,y,xhat,yhat\n0,1,2,1,2\n1,1.5,2,2,2\n");
    std::remove(path.c_str());
}

TEST_CASE("profile csv layout") {
    const std::string path = "io_profile.csv";
    io::write_profile_csv(path, {2.0, -1.0});
    // Two bins: angles 0 and pi.
    const std::string got = slurp(path);
    CHECK(got.substr(0, 22) == "index,angle_rad,value\n");
    CHECK(got.find("0,0,2\n") != std::string::npos);
    CHECK(got.find("1,3.14159") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("trace csv layout") {
    ResonatorState st;
    st.iterations = 2;
    st.trace = {{{0.9, 0.1}, {0.2}}, {{1.0, 0.0}, {0.7}}};
    const std::vector<std::string> factor_names{"color", "shape"};
    const std::vector<std::vector<std::string>> factor_keys{{"red", "blue"},
                                                            {"cube"}};
    const std::string path = "io_trace.csv";
    io::write_trace_csv(path, st, factor_names, factor_keys);
    const std::string got = slurp(path);
    CHECK(got ==
          "factor,iteration,key,similarity\n"
          "color,1,red,0.9\n"
          "color,1,blue,0.1\n"
          "shape,1,cube,0.2\n"
          "color,2,red,1\n"
          "color,2,blue,0\n"
          "shape,2,cube,0.7\n");
    std::remove(path.c_str());
}

TEST_CASE("config text parsing") {
    const std::string text =
        "# comment line\n"
        "alpha = 1\n"
        "\n"
        "beta=two words  \n"
        "  gamma  =  3.5  # trailing comment\n";
    const io::ConfigMap m = io::parse_config_text(text);
    REQUIRE(m.size() == 3);
    CHECK(m.at("alpha") == "1");
    CHECK(m.at("beta") == "two words");
    CHECK(m.at("gamma") == "3.5");

    CHECK_THROWS_AS(io::parse_config_text("novalue\n"), std::invalid_argument);
    CHECK_THROWS_AS(io::parse_config_text("= 3\n"), std::invalid_argument);
    CHECK_THROWS_AS(io::parse_config_text("a = 1\na = 2\n"),
                    std::invalid_argument);
}

TEST_CASE("config file round trip") {
    io::ConfigMap m{{"seed", "42"}, {"arena", "64"}, {"gamma", "0.8"}};
    const std::string path = "io_config.txt";
    io::write_config_file(path, m);
    CHECK(io::read_config_file(path) == m);
    // Deterministic emission: keys in sorted order.
    CHECK(slurp(path) == "arena = 64\ngamma = 0.8\nseed = 42\n");
    std::remove(path.c_str());

    CHECK_THROWS_AS(io::read_config_file("missing_config.txt"),
                    std::runtime_error);
}

TEST_CASE("shortest round-trip double formatting") {
    CHECK(io::format_double(0.0) == "0");
    CHECK(io::format_double(1.0) == "1");
    CHECK(io::format_double(0.5) == "0.5");
    CHECK(io::format_double(-2.25) == "-2.25");
    CHECK(io::format_double(1.0 / 3.0) == "0.3333333333333333");

    for (double v : {0.1, 1e-17, 3.141592653589793, -12345.6789, 1e300}) {
        const std::string s = io::format_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
}
