#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <vector>

#include "gcvsa/config.hpp"
#include "gcvsa/core.hpp"
#include "gcvsa/tensor.hpp"

namespace gcvsa {

struct Point2D {
    double x = 0.0;
    double y = 0.0;
};

/// Closed rectangle [xmin, xmax] x [ymin, ymax].
struct Rect {
    double xmin = 0.0;
    double ymin = 0.0;
    double xmax = 0.0;
    double ymax = 0.0;
};

/// Regular 2D grid of samples with its lattice placement, row-major with the
/// row index running along +y. value(ix, iy) sits at (x0 + ix*step,
/// y0 + iy*step).
struct Field2D {
    int nx = 0;
    int ny = 0;
    double x0 = 0.0;
    double y0 = 0.0;
    double step = 1.0;
    std::vector<double> values;

    double& at(int ix, int iy) { return values[static_cast<std::size_t>(iy) * nx + ix]; }
    double at(int ix, int iy) const { return values[static_cast<std::size_t>(iy) * nx + ix]; }
};

/// Project a plane point into a module's three hexagonal axes: first rotate
/// by the module orientation, then apply the fixed 3x2 projection whose rows
/// are (sqrt(3)/2, -1/2), (-sqrt(3)/2, -1/2), (0, 1), then divide by the
/// scale. One unit along any output axis is one full module period; the three
/// outputs always sum to zero.
std::array<double, 3> hex_project(Point2D p, double theta, double scale);

/// Scales and orientations for every module. Orientations within a scale are
/// uniformly spaced across the circle with a scale-specific random offset
/// drawn from the config seed; the angle enumeration runs clockwise along the
/// ring index so that ring shifts realize counterclockwise plane rotations.
class ModuleGeometry {
public:
    explicit ModuleGeometry(const GridConfig& cfg);

    const GridConfig& config() const { return cfg_; }
    const std::vector<double>& scales() const { return scales_; }
    const std::vector<double>& offsets() const { return offsets_; }

    double scale(int s) const { return scales_.at(s); }
    double orientation(int s, int t) const;

private:
    GridConfig cfg_;
    std::vector<double> scales_;
    std::vector<double> offsets_;
};

inline ModuleGeometry make_geometry(const GridConfig& cfg) {
    return ModuleGeometry(cfg);
}

/// Unit-step phase slopes: gx holds each module's phase advance (in index
/// units) for a step of one pixel along +x, gy along +y. Slopes are stored
/// unwrapped so fractional coordinates scale them before any mod-n reduction;
/// encode_position(x, y) == materialize(x*gx + y*gy).
struct GeneratorPair {
    PhaseTensor gx;
    PhaseTensor gy;
};

GeneratorPair make_generators(const ModuleGeometry& geom);

/// Phase triples of a plane point across all modules (index units, unwrapped).
PhaseTensor encode_phases(Point2D p, const ModuleGeometry& geom);

/// Pure vector encoding of a plane point.
GcTensor encode_position(Point2D p, const ModuleGeometry& geom);

/// One neuron's activation (fixed module element) evaluated over a sample
/// grid. The field repeats on a hexagonal lattice whose constant is
/// 2*scale/sqrt(3).
Field2D receptive_field(const ModuleGeometry& geom, int scale_idx,
                        int orient_idx, int i, int j, int k, const Rect& extent,
                        double step);

/// The two primitive lattice vectors of one module's hexagonal firing lattice.
std::array<Point2D, 2> lattice_vectors(const ModuleGeometry& geom, int scale_idx,
                                       int orient_idx);

class Codebook;

/// Codebook over a rectangular lattice of encoded positions, with decode and
/// similarity-map helpers. Entry keys are "x,y".
class PositionCodebook {
public:
    PositionCodebook(const Rect& extent, double step, const ModuleGeometry& geom,
                     std::size_t max_entries = 1000000);
    ~PositionCodebook();
    PositionCodebook(PositionCodebook&&) noexcept;
    PositionCodebook& operator=(PositionCodebook&&) noexcept;
    PositionCodebook(const PositionCodebook&) = delete;
    PositionCodebook& operator=(const PositionCodebook&) = delete;

    const Codebook& codebook() const { return *cb_; }
    int nx() const { return nx_; }
    int ny() const { return ny_; }
    double step() const { return step_; }
    Point2D point(std::size_t index) const;

    /// Lattice point with the highest cosine similarity.
    Point2D decode(const GcTensor& v) const;

    /// Cosine similarity of v against every lattice entry.
    Field2D similarity_map(const GcTensor& v) const;

private:
    std::unique_ptr<Codebook> cb_;
    double x0_ = 0.0, y0_ = 0.0, step_ = 1.0;
    int nx_ = 0, ny_ = 0;
};

PositionCodebook position_codebook(const Rect& extent, double step,
                                   const ModuleGeometry& geom,
                                   std::size_t max_entries = 1000000);

}  // namespace gcvsa
