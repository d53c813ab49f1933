#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "gcvsa/config.hpp"
#include "gcvsa/rng.hpp"
#include "gcvsa/tensor.hpp"

namespace gcvsa {

/// Realize a phase tensor as activations: each module element (i,j,k) is
/// (2/n) * (cos(2pi(i-u)/n) + cos(2pi(j-v)/n) + cos(2pi(k-w)/n)) for that
/// module's phase triple (u,v,w). The result is pure: every module's spectrum
/// has unit amplitude at the six fundamental bins and none anywhere else.
GcTensor materialize(const PhaseTensor& phases);

/// Recover phases from a pure vector, reduced to [0, n). Throws
/// std::invalid_argument("not a pure vector") if any module's fundamental-bin
/// amplitude deviates from 1 by more than `tol`.
PhaseTensor extract_phases(const GcTensor& v, double tol = 0.01);

/// True when every module's fundamental-bin amplitudes are within `tol` of 1.
bool is_pure(const GcTensor& v, double tol = 0.01);

/// Uniform random phases in [0, n), drawn per (scale, orientation, axis) in
/// row-major order.
PhaseTensor random_phases(const GridConfig& cfg, Rng& rng);

/// materialize(random_phases(...)): a fresh quasi-orthogonal symbol.
GcTensor random_symbol(const GridConfig& cfg, Rng& rng);

/// The binding identity: all phases zero.
GcTensor identity(const GridConfig& cfg);

/// Elementwise sum, optionally weighted. No normalization is applied.
GcTensor bundle(std::span<const GcTensor> vs);
GcTensor bundle(std::span<const GcTensor> vs, std::span<const double> weights);
GcTensor bundle(std::initializer_list<GcTensor> vs);

/// Module-wise circular convolution, computed per module as the inverse 3D
/// DFT of the product of spectra. Pure inputs with phases p and q give a pure
/// result with phases (p + q) mod n.
GcTensor bind(const GcTensor& u, const GcTensor& v);

/// Module-wise circular correlation (conjugate multiply in the spectrum).
/// For pure v, unbind(bind(u, v), v) == u.
GcTensor unbind(const GcTensor& u, const GcTensor& v);

/// Phase scaling: result phases are (exponent * base.phases) mod n. Integer
/// exponents agree with repeated binding of the materialized base.
PhaseTensor fractional_power(const PhaseTensor& base, double exponent);

double dot(const GcTensor& a, const GcTensor& b);
double norm(const GcTensor& v);

/// Cosine similarity; throws std::invalid_argument on a zero-norm input.
double cosine_similarity(const GcTensor& a, const GcTensor& b);

namespace detail {
/// Fundamental spectrum of one n^3 module: the unnormalized forward DFT at
/// the (+1,0,0), (0,+1,0), (0,0,+1) bins, scaled by 1/n^2 so pure modules
/// have unit amplitude.
std::array<std::complex<double>, 3> fundamental_phasors(const double* m, int n);
}  // namespace detail

}  // namespace gcvsa
