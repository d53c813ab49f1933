#include "gcvsa/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace gcvsa::io {

namespace {

std::ofstream open_out(const std::string& path, std::ios::openmode mode) {
    std::ofstream os(path, mode);
    if (!os) throw std::runtime_error("io: cannot open for write: " + path);
    return os;
}

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    for (int prec = 1; prec <= 17; ++prec) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) return buf;
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_pgm(const std::string& path, const Field2D& field, double lo,
               double hi) {
    if (!(hi > lo)) throw std::invalid_argument("pgm: empty value range");
    auto os = open_out(path, std::ios::binary);
    os << "P5\n" << field.nx << " " << field.ny << "\n255\n";
    const double scale = 255.0 / (hi - lo);
    std::vector<unsigned char> row(field.nx);
    for (int iy = field.ny - 1; iy >= 0; --iy) {
        for (int ix = 0; ix < field.nx; ++ix) {
            const double v = (field.at(ix, iy) - lo) * scale;
            row[ix] = static_cast<unsigned char>(
                std::clamp(std::lround(v), 0L, 255L));
        }
        os.write(reinterpret_cast<const char*>(row.data()), field.nx);
    }
    if (!os) throw std::runtime_error("pgm: write failed: " + path);
}

void write_field_csv(const std::string& path, const Field2D& field) {
    auto os = open_out(path, std::ios::out);
    os << "x,y,value\n";
    for (int iy = 0; iy < field.ny; ++iy)
        for (int ix = 0; ix < field.nx; ++ix)
            os << format_double(field.x0 + ix * field.step) << ","
               << format_double(field.y0 + iy * field.step) << ","
               << format_double(field.at(ix, iy)) << "\n";
    if (!os) throw std::runtime_error("csv: write failed: " + path);
}

void write_trajectory_csv(const std::string& path,
                          const experiments::Trajectory& traj,
                          const std::vector<Point2D>& decoded) {
    if (decoded.size() != traj.positions.size())
        throw std::invalid_argument("trajectory csv: length mismatch");
    auto os = open_out(path, std::ios::out);
    os << "t,x,y,xhat,yhat\n";
    for (std::size_t t = 0; t < traj.positions.size(); ++t)
        os << t << "," << format_double(traj.positions[t].x) << ","
           << format_double(traj.positions[t].y) << ","
           << format_double(decoded[t].x) << "," << format_double(decoded[t].y)
           << "\n";
    if (!os) throw std::runtime_error("csv: write failed: " + path);
}

void write_trace_csv(const std::string& path, const ResonatorState& state,
                     const std::vector<std::string>& factor_names,
                     const std::vector<std::vector<std::string>>& factor_keys) {
    auto os = open_out(path, std::ios::out);
    os << "factor,iteration,key,similarity\n";
    for (std::size_t it = 0; it < state.trace.size(); ++it)
        for (std::size_t f = 0; f < state.trace[it].size(); ++f) {
            const auto& sims = state.trace[it][f];
            for (std::size_t k = 0; k < sims.size(); ++k)
                os << factor_names.at(f) << "," << (it + 1) << ","
                   << factor_keys.at(f).at(k) << "," << format_double(sims[k])
                   << "\n";
        }
    if (!os) throw std::runtime_error("csv: write failed: " + path);
}

void write_profile_csv(const std::string& path,
                       const std::vector<double>& profile) {
    auto os = open_out(path, std::ios::out);
    os << "index,angle_rad,value\n";
    const int N = static_cast<int>(profile.size());
    for (int k = 0; k < N; ++k)
        os << k << "," << format_double(k * 2.0 * std::numbers::pi / N) << ","
           << format_double(profile[k]) << "\n";
    if (!os) throw std::runtime_error("csv: write failed: " + path);
}

ConfigMap parse_config_text(const std::string& text) {
    ConfigMap out;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: missing '=' on line " +
                                        std::to_string(lineno));
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            if (a == std::string::npos) return std::string();
            return s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("config: empty key on line " +
                                        std::to_string(lineno));
        if (out.count(key))
            throw std::invalid_argument("config: duplicate key: " + key);
        out[key] = value;
    }
    return out;
}

ConfigMap read_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("config: cannot open: " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse_config_text(ss.str());
}

void write_config_file(const std::string& path, const ConfigMap& values) {
    auto os = open_out(path, std::ios::out);
    for (const auto& [k, v] : values) os << k << " = " << v << "\n";
    if (!os) throw std::runtime_error("config: write failed: " + path);
}

}  // namespace gcvsa::io
