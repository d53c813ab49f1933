#include "gcvsa/resonator.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gcvsa/core.hpp"

namespace gcvsa {

GcTensor normalize_to_pure(const GcTensor& v) {
    const GridConfig& cfg = v.config();
    const double k = -cfg.n / (2.0 * std::numbers::pi);
    PhaseTensor phases(cfg);
    for (int s = 0; s < cfg.n_s; ++s)
        for (int t = 0; t < cfg.n_theta; ++t) {
            const auto z = detail::fundamental_phasors(v.module(s, t), cfg.n);
            for (int axis = 0; axis < 3; ++axis)
                phases.at(s, t, axis) = wrap_phase(k * std::arg(z[axis]), cfg.n);
        }
    return materialize(phases);
}

ResonatorState factorize(const GcTensor& composite,
                         const std::vector<const Codebook*>& codebooks,
                         const FactorizeOptions& opts) {
    if (codebooks.size() < 2)
        throw std::invalid_argument("factorize: need at least two codebooks");
    for (const Codebook* cb : codebooks) {
        if (!cb || cb->size() == 0)
            throw std::invalid_argument("factorize: empty codebook");
        if (!(cb->config() == composite.config()))
            throw std::invalid_argument("factorize: config mismatch");
    }
    if (norm(composite) == 0.0)
        throw std::invalid_argument("factorize: zero composite");
    if (opts.max_iter < 1)
        throw std::invalid_argument("factorize: max_iter must be >= 1");

    const std::size_t F = codebooks.size();
    ResonatorState state;
    if (opts.initial) {
        if (opts.initial->size() != F)
            throw std::invalid_argument("factorize: initial estimate count");
        state.estimates = *opts.initial;
    } else {
        state.estimates.reserve(F);
        for (const Codebook* cb : codebooks) {
            const std::vector<double> ones(cb->size(), 1.0);
            state.estimates.push_back(normalize_to_pure(cb->superpose(ones)));
        }
    }

    std::vector<std::size_t> keys(F, 0), prev_keys(F, 0);
    int stable_run = 0;

    for (int it = 1; it <= opts.max_iter; ++it) {
        double max_delta = 0.0;
        std::vector<std::vector<double>> iter_trace(F);
        for (std::size_t f = 0; f < F; ++f) {
            // Bind every other current estimate and strip it from the
            // composite; the remainder is a noisy view of factor f.
            GcTensor others = state.estimates[(f + 1) % F];
            for (std::size_t g = 2; g < F; ++g)
                others = bind(others, state.estimates[(f + g) % F]);
            const GcTensor residual = unbind(composite, others);
            std::vector<double> sims = codebooks[f]->similarities(residual);
            GcTensor updated =
                normalize_to_pure(codebooks[f]->superpose(sims));
            const auto& a = updated.data();
            const auto& b = state.estimates[f].data();
            for (std::size_t i = 0; i < a.size(); ++i)
                max_delta = std::max(max_delta, std::abs(a[i] - b[i]));
            state.estimates[f] = std::move(updated);
            std::size_t best = 0;
            for (std::size_t i = 1; i < sims.size(); ++i)
                if (sims[i] > sims[best]) best = i;
            keys[f] = best;
            iter_trace[f] = std::move(sims);
        }
        state.trace.push_back(std::move(iter_trace));
        state.iterations = it;

        if (it > 1 && keys == prev_keys)
            ++stable_run;
        else
            stable_run = 1;
        prev_keys = keys;
        if (stable_run >= 3 || max_delta < opts.tol) {
            state.converged = true;
            break;
        }
    }

    state.key_indices = keys;
    for (std::size_t f = 0; f < F; ++f) {
        state.keys.push_back(codebooks[f]->keys()[keys[f]]);
        state.similarities.push_back(state.trace.back()[f][keys[f]]);
    }
    return state;
}

}  // namespace gcvsa
