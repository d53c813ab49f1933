#include "gcvsa/core.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gcvsa/dft.hpp"

namespace gcvsa {

namespace {

constexpr double kImagTol = 1e-9;

void check_same_config(const GcTensor& a, const GcTensor& b) {
    if (!(a.config() == b.config()))
        throw std::invalid_argument("operands use different configs");
}

}  // namespace

namespace detail {

std::array<cd, 3> fundamental_phasors(const double* m, int n) {
    const std::size_t n2 = static_cast<std::size_t>(n) * n;
    std::array<cd, 3> z{cd(0, 0), cd(0, 0), cd(0, 0)};
    // Sum out the other two axes first; the fundamental bin only needs the
    // 1D transform of each axis's marginal.
    std::vector<double> su(n, 0.0), sv(n, 0.0), sw(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const double val = m[i * n2 + j * n + k];
                su[i] += val;
                sv[j] += val;
                sw[k] += val;
            }
    for (int t = 0; t < n; ++t) {
        const double a = -2.0 * std::numbers::pi * t / n;
        const cd w(std::cos(a), std::sin(a));
        z[0] += su[t] * w;
        z[1] += sv[t] * w;
        z[2] += sw[t] * w;
    }
    const double scale = 1.0 / n2;
    for (auto& c : z) c *= scale;
    return z;
}

}  // namespace detail

GcTensor materialize(const PhaseTensor& phases) {
    const GridConfig& cfg = phases.config();
    const int n = cfg.n;
    const double amp = 2.0 / n;
    const double tau = 2.0 * std::numbers::pi / n;
    GcTensor out(cfg);
    std::vector<double> cu(n), cv(n), cw(n);
    for (int s = 0; s < cfg.n_s; ++s)
        for (int t = 0; t < cfg.n_theta; ++t) {
            const double u = phases.at(s, t, 0);
            const double v = phases.at(s, t, 1);
            const double w = phases.at(s, t, 2);
            for (int i = 0; i < n; ++i) {
                cu[i] = amp * std::cos(tau * (i - u));
                cv[i] = amp * std::cos(tau * (i - v));
                cw[i] = amp * std::cos(tau * (i - w));
            }
            double* m = out.module(s, t);
            std::size_t idx = 0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k, ++idx)
                        m[idx] = cu[i] + cv[j] + cw[k];
        }
    return out;
}

PhaseTensor extract_phases(const GcTensor& v, double tol) {
    const GridConfig& cfg = v.config();
    const int n = cfg.n;
    PhaseTensor out(cfg);
    const double k = -n / (2.0 * std::numbers::pi);
    for (int s = 0; s < cfg.n_s; ++s)
        for (int t = 0; t < cfg.n_theta; ++t) {
            const auto z = detail::fundamental_phasors(v.module(s, t), n);
            for (int axis = 0; axis < 3; ++axis) {
                if (std::abs(std::abs(z[axis]) - 1.0) > tol)
                    throw std::invalid_argument("not a pure vector");
                out.at(s, t, axis) =
                    wrap_phase(k * std::arg(z[axis]), n);
            }
        }
    return out;
}

bool is_pure(const GcTensor& v, double tol) {
    const GridConfig& cfg = v.config();
    for (int s = 0; s < cfg.n_s; ++s)
        for (int t = 0; t < cfg.n_theta; ++t) {
            const auto z = detail::fundamental_phasors(v.module(s, t), cfg.n);
            for (int axis = 0; axis < 3; ++axis)
                if (std::abs(std::abs(z[axis]) - 1.0) > tol) return false;
        }
    return true;
}

PhaseTensor random_phases(const GridConfig& cfg, Rng& rng) {
    cfg.validate();
    PhaseTensor out(cfg);
    for (int s = 0; s < cfg.n_s; ++s)
        for (int t = 0; t < cfg.n_theta; ++t)
            for (int axis = 0; axis < 3; ++axis)
                out.at(s, t, axis) = rng.uniform(0.0, static_cast<double>(cfg.n));
    return out;
}

GcTensor random_symbol(const GridConfig& cfg, Rng& rng) {
    return materialize(random_phases(cfg, rng));
}

GcTensor identity(const GridConfig& cfg) {
    return materialize(PhaseTensor::zeros(cfg));
}

GcTensor bundle(std::span<const GcTensor> vs, std::span<const double> weights) {
    if (vs.empty()) throw std::invalid_argument("bundle: empty input");
    if (weights.size() != vs.size())
        throw std::invalid_argument("bundle: weight count does not match");
    GcTensor out(vs[0].config());
    for (std::size_t m = 0; m < vs.size(); ++m) {
        check_same_config(out, vs[m]);
        const auto& src = vs[m].data();
        auto& dst = out.data();
        const double w = weights[m];
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += w * src[i];
    }
    return out;
}

GcTensor bundle(std::span<const GcTensor> vs) {
    const std::vector<double> ones(vs.size(), 1.0);
    return bundle(vs, std::span<const double>(ones));
}

GcTensor bundle(std::initializer_list<GcTensor> vs) {
    return bundle(std::span<const GcTensor>(vs.begin(), vs.size()));
}

namespace {

enum class SpectrumOp { kMultiply, kMultiplyConj };

GcTensor spectrum_product(const GcTensor& u, const GcTensor& v, SpectrumOp op) {
    check_same_config(u, v);
    const GridConfig& cfg = u.config();
    const int n = cfg.n;
    const std::size_t msize = cfg.module_size();
    const detail::SmallDft dft(n);
    GcTensor out(cfg);
    std::vector<detail::cd> fu(msize), fv(msize);
    // Pure modules carry spectra of amplitude n^2 at the fundamental bins
    // under the unnormalized forward transform; dividing the product by n^2
    // keeps binding closed over pure vectors (unit times unit stays unit).
    const double scale = 1.0 / (static_cast<double>(n) * n);
    for (int s = 0; s < cfg.n_s; ++s)
        for (int t = 0; t < cfg.n_theta; ++t) {
            dft.forward3(u.module(s, t), fu.data());
            dft.forward3(v.module(s, t), fv.data());
            if (op == SpectrumOp::kMultiply)
                for (std::size_t i = 0; i < msize; ++i) fu[i] *= fv[i];
            else
                for (std::size_t i = 0; i < msize; ++i) fu[i] *= std::conj(fv[i]);
            double max_imag = 0.0;
            dft.inverse3(fu.data(), out.module(s, t), scale, &max_imag);
            if (max_imag > kImagTol)
                throw std::runtime_error("spectrum product: imaginary residue");
        }
    return out;
}

}  // namespace

GcTensor bind(const GcTensor& u, const GcTensor& v) {
    return spectrum_product(u, v, SpectrumOp::kMultiply);
}

GcTensor unbind(const GcTensor& u, const GcTensor& v) {
    return spectrum_product(u, v, SpectrumOp::kMultiplyConj);
}

PhaseTensor fractional_power(const PhaseTensor& base, double exponent) {
    const GridConfig& cfg = base.config();
    PhaseTensor out(cfg);
    const auto& src = base.values();
    auto& dst = out.values();
    for (std::size_t i = 0; i < src.size(); ++i)
        dst[i] = wrap_phase(exponent * src[i], cfg.n);
    return out;
}

double dot(const GcTensor& a, const GcTensor& b) {
    check_same_config(a, b);
    double acc = 0.0;
    const auto& x = a.data();
    const auto& y = b.data();
    for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
    return acc;
}

double norm(const GcTensor& v) { return std::sqrt(dot(v, v)); }

double cosine_similarity(const GcTensor& a, const GcTensor& b) {
    const double na = norm(a);
    const double nb = norm(b);
    if (na == 0.0 || nb == 0.0)
        throw std::invalid_argument("cosine similarity: zero-norm operand");
    return dot(a, b) / (na * nb);
}

}  // namespace gcvsa
