#include "gcvsa/spatial.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "gcvsa/codebook.hpp"
#include "gcvsa/rng.hpp"

namespace gcvsa {

namespace {

const double kRow0x = std::sqrt(3.0) / 2.0;  // projection rows: (kRow0x, -1/2),
                                             // (-kRow0x, -1/2), (0, 1)

std::string format_coord(double v) {
    if (v == std::floor(v) && std::abs(v) < 1e15) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(v));
        return buf;
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

}  // namespace

std::array<double, 3> hex_project(Point2D p, double theta, double scale) {
    if (!(scale > 0.0)) throw std::invalid_argument("hex_project: scale must be > 0");
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double xr = c * p.x - s * p.y;
    const double yr = s * p.x + c * p.y;
    return {(kRow0x * xr - 0.5 * yr) / scale, (-kRow0x * xr - 0.5 * yr) / scale,
            yr / scale};
}

ModuleGeometry::ModuleGeometry(const GridConfig& cfg) : cfg_(cfg) {
    cfg_.validate();
    scales_.resize(cfg_.n_s);
    for (int i = 0; i < cfg_.n_s; ++i)
        scales_[i] = cfg_.s_min * std::pow(cfg_.growth, i);
    Rng rng(cfg_.seed);
    offsets_.resize(cfg_.n_s);
    for (int i = 0; i < cfg_.n_s; ++i)
        offsets_[i] = rng.uniform(0.0, 2.0 * std::numbers::pi);
}

double ModuleGeometry::orientation(int s, int t) const {
    if (s < 0 || s >= cfg_.n_s || t < 0 || t >= cfg_.n_theta)
        throw std::out_of_range("geometry: module index out of range");
    // Clockwise enumeration: a +1 ring shift then realizes a +2pi/n_theta
    // plane rotation.
    return offsets_[s] - t * (2.0 * std::numbers::pi / cfg_.n_theta);
}

PhaseTensor encode_phases(Point2D p, const ModuleGeometry& geom) {
    const GridConfig& cfg = geom.config();
    PhaseTensor out(cfg);
    for (int s = 0; s < cfg.n_s; ++s) {
        const double sc = geom.scale(s);
        for (int t = 0; t < cfg.n_theta; ++t) {
            const auto h = hex_project(p, geom.orientation(s, t), sc);
            for (int axis = 0; axis < 3; ++axis)
                out.at(s, t, axis) = cfg.n * h[axis];
        }
    }
    return out;
}

GcTensor encode_position(Point2D p, const ModuleGeometry& geom) {
    return materialize(encode_phases(p, geom));
}

GeneratorPair make_generators(const ModuleGeometry& geom) {
    return {encode_phases({1.0, 0.0}, geom), encode_phases({0.0, 1.0}, geom)};
}

Field2D receptive_field(const ModuleGeometry& geom, int scale_idx,
                        int orient_idx, int i, int j, int k, const Rect& extent,
                        double step) {
    const GridConfig& cfg = geom.config();
    if (i < 0 || i >= cfg.n || j < 0 || j >= cfg.n || k < 0 || k >= cfg.n)
        throw std::invalid_argument("receptive_field: element index out of range");
    const double theta = geom.orientation(scale_idx, orient_idx);
    const double sc = geom.scale(scale_idx);
    if (!(step > 0.0)) throw std::invalid_argument("receptive_field: step must be > 0");
    if (extent.xmax < extent.xmin || extent.ymax < extent.ymin)
        throw std::invalid_argument("receptive_field: empty extent");

    Field2D f;
    f.x0 = extent.xmin;
    f.y0 = extent.ymin;
    f.step = step;
    f.nx = static_cast<int>(std::floor((extent.xmax - extent.xmin) / step + 1e-9)) + 1;
    f.ny = static_cast<int>(std::floor((extent.ymax - extent.ymin) / step + 1e-9)) + 1;
    f.values.resize(static_cast<std::size_t>(f.nx) * f.ny);

    const double amp = 2.0 / cfg.n;
    const double tau = 2.0 * std::numbers::pi / cfg.n;
    for (int iy = 0; iy < f.ny; ++iy)
        for (int ix = 0; ix < f.nx; ++ix) {
            const Point2D p{f.x0 + ix * step, f.y0 + iy * step};
            const auto h = hex_project(p, theta, sc);
            const double u = cfg.n * h[0];
            const double v = cfg.n * h[1];
            const double w = cfg.n * h[2];
            f.at(ix, iy) = amp * (std::cos(tau * (i - u)) +
                                  std::cos(tau * (j - v)) +
                                  std::cos(tau * (k - w)));
        }
    return f;
}

std::array<Point2D, 2> lattice_vectors(const ModuleGeometry& geom, int scale_idx,
                                       int orient_idx) {
    const double theta = geom.orientation(scale_idx, orient_idx);
    const double sc = geom.scale(scale_idx);
    const double c = std::cos(-theta);
    const double s = std::sin(-theta);
    // In the rotated frame the firing lattice is generated by (2s/sqrt(3), 0)
    // and (-s/sqrt(3), -s); both shift the projected triple by whole periods.
    const double ax = 2.0 * sc / std::sqrt(3.0);
    const Point2D e1{ax, 0.0};
    const Point2D e2{-sc / std::sqrt(3.0), -sc};
    return {Point2D{c * e1.x - s * e1.y, s * e1.x + c * e1.y},
            Point2D{c * e2.x - s * e2.y, s * e2.x + c * e2.y}};
}

PositionCodebook::PositionCodebook(const Rect& extent, double step,
                                   const ModuleGeometry& geom,
                                   std::size_t max_entries)
    : cb_(std::make_unique<Codebook>(geom.config())) {
    if (!(step > 0.0))
        throw std::invalid_argument("position codebook: step must be > 0");
    if (extent.xmax < extent.xmin || extent.ymax < extent.ymin)
        throw std::invalid_argument("position codebook: empty extent");
    x0_ = extent.xmin;
    y0_ = extent.ymin;
    step_ = step;
    nx_ = static_cast<int>(std::floor((extent.xmax - extent.xmin) / step + 1e-9)) + 1;
    ny_ = static_cast<int>(std::floor((extent.ymax - extent.ymin) / step + 1e-9)) + 1;
    const std::size_t count = static_cast<std::size_t>(nx_) * ny_;
    if (count > max_entries)
        throw std::invalid_argument("position codebook: entry count exceeds limit");
    for (int iy = 0; iy < ny_; ++iy)
        for (int ix = 0; ix < nx_; ++ix) {
            const Point2D p{x0_ + ix * step_, y0_ + iy * step_};
            cb_->add(format_coord(p.x) + "," + format_coord(p.y),
                     encode_position(p, geom));
        }
}

PositionCodebook::~PositionCodebook() = default;
PositionCodebook::PositionCodebook(PositionCodebook&&) noexcept = default;
PositionCodebook& PositionCodebook::operator=(PositionCodebook&&) noexcept =
    default;

Point2D PositionCodebook::point(std::size_t index) const {
    if (index >= static_cast<std::size_t>(nx_) * ny_)
        throw std::out_of_range("position codebook: index out of range");
    const int iy = static_cast<int>(index) / nx_;
    const int ix = static_cast<int>(index) % nx_;
    return {x0_ + ix * step_, y0_ + iy * step_};
}

Point2D PositionCodebook::decode(const GcTensor& v) const {
    return point(cb_->cleanup_index(v));
}

Field2D PositionCodebook::similarity_map(const GcTensor& v) const {
    Field2D f;
    f.nx = nx_;
    f.ny = ny_;
    f.x0 = x0_;
    f.y0 = y0_;
    f.step = step_;
    f.values = cb_->similarities(v);
    return f;
}

PositionCodebook position_codebook(const Rect& extent, double step,
                                   const ModuleGeometry& geom,
                                   std::size_t max_entries) {
    return PositionCodebook(extent, step, geom, max_entries);
}

}  // namespace gcvsa
