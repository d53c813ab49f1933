#pragma once

#include <vector>

#include "gcvsa/tensor.hpp"

namespace gcvsa {

/// Rotate the encoded content counterclockwise by `alpha` radians: every
/// orientation ring (length n_theta) is circularly convolved with the
/// fractional power, exponent alpha*n_theta/(2pi), of a one-hot ring with its
/// peak at index 1. Implemented per ring as DFT, phase multiplication,
/// inverse DFT. Exact for multiples of 2pi/n_theta; band-limited
/// interpolation otherwise, so accuracy degrades away from the rotation
/// center.
GcTensor rotate(const GcTensor& v, double alpha);

/// Integer circular shift of the orientation axis; equals rotate by
/// steps*2pi/n_theta exactly.
GcTensor permute_orientation(const GcTensor& v, int steps);

/// Circular correlation profile over ring offsets, summed across scales and
/// module elements: inverse ring DFT of ringDFT(rotated) * conj(ringDFT(
/// reference)). Length n_theta.
std::vector<double> angle_profile(const GcTensor& rotated,
                                  const GcTensor& reference);

/// Offset of the profile's peak, in radians in [0, 2pi). Throws
/// std::runtime_error("angle undecodable") when the profile is too flat
/// (max/mean < 1.2, or non-positive mean).
double decode_angle(const GcTensor& rotated, const GcTensor& reference);

}  // namespace gcvsa
