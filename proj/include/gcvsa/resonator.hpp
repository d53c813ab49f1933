#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gcvsa/codebook.hpp"
#include "gcvsa/tensor.hpp"

namespace gcvsa {

/// Project a tensor onto the nearest pure vector: each module's fundamental
/// bins are rescaled to unit amplitude, phases kept, everything else dropped.
GcTensor normalize_to_pure(const GcTensor& v);

struct FactorizeOptions {
    int max_iter = 100;
    double tol = 1e-4;
    /// Starting estimates, one per codebook; defaults to each codebook's
    /// unweighted superposition normalized to pure form.
    std::optional<std::vector<GcTensor>> initial;
};

struct ResonatorState {
    std::vector<GcTensor> estimates;
    /// trace[it][factor][entry]: similarity profile per iteration.
    std::vector<std::vector<std::vector<double>>> trace;
    int iterations = 0;
    bool converged = false;
    std::vector<std::size_t> key_indices;
    std::vector<std::string> keys;
    std::vector<double> similarities;
};

/// Factor a composite built by binding one entry per codebook. Sequential
/// updates in codebook order: unbind all other current estimates, read the
/// residual out against the factor's codebook, superpose by similarity, and
/// normalize to pure form. Converged once every factor's cleanup key has held
/// for three consecutive iterations (or the estimates move less than tol).
/// Deterministic; no randomness in the loop.
ResonatorState factorize(const GcTensor& composite,
                         const std::vector<const Codebook*>& codebooks,
                         const FactorizeOptions& opts = {});

}  // namespace gcvsa
