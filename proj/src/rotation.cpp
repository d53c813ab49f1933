#include "gcvsa/rotation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gcvsa/dft.hpp"

namespace gcvsa {

namespace {

constexpr double kImagTol = 1e-9;
constexpr double kFlatnessRatio = 1.2;

void check_same_config(const GcTensor& a, const GcTensor& b) {
    if (!(a.config() == b.config()))
        throw std::invalid_argument("operands use different configs");
}

}  // namespace

GcTensor rotate(const GcTensor& v, double alpha) {
    const GridConfig& cfg = v.config();
    const int N = cfg.n_theta;
    const std::size_t msize = cfg.module_size();
    const double t = alpha * N / (2.0 * std::numbers::pi);
    const detail::SmallDft dft(N);

    // Shifting ring content by t steps multiplies bin k by exp(-2pi*i*k*t/N),
    // with k taken as a signed frequency so the result stays real. An even
    // ring length leaves the Nyquist bin, which takes the real factor
    // cos(pi*t).
    std::vector<detail::cd> factor(N);
    for (int k = 0; k < N; ++k) {
        if (2 * k == N) {
            factor[k] = detail::cd(std::cos(std::numbers::pi * t), 0.0);
            continue;
        }
        const int ks = (k <= N / 2) ? k : k - N;
        const double a = -2.0 * std::numbers::pi * ks * t / N;
        factor[k] = detail::cd(std::cos(a), std::sin(a));
    }

    GcTensor out = v;
    std::vector<detail::cd> ring(N);
    for (int s = 0; s < cfg.n_s; ++s) {
        // Rings run across the orientation axis: stride one module block.
        double* base = out.module(s, 0);
        for (std::size_t e = 0; e < msize; ++e) {
            dft.forward_ring(base + e, msize, ring.data());
            for (int k = 0; k < N; ++k) ring[k] *= factor[k];
            double max_imag = 0.0;
            dft.inverse_ring(ring.data(), base + e, msize, &max_imag);
            if (max_imag > kImagTol)
                throw std::runtime_error("rotate: imaginary residue");
        }
    }
    return out;
}

GcTensor permute_orientation(const GcTensor& v, int steps) {
    const GridConfig& cfg = v.config();
    const int N = cfg.n_theta;
    const std::size_t msize = cfg.module_size();
    int sh = steps % N;
    if (sh < 0) sh += N;
    GcTensor out(cfg);
    for (int s = 0; s < cfg.n_s; ++s)
        for (int t = 0; t < N; ++t) {
            const double* src = v.module(s, (t - sh + N) % N);
            double* dst = out.module(s, t);
            std::copy(src, src + msize, dst);
        }
    return out;
}

std::vector<double> angle_profile(const GcTensor& rotated,
                                  const GcTensor& reference) {
    check_same_config(rotated, reference);
    const GridConfig& cfg = rotated.config();
    const int N = cfg.n_theta;
    const std::size_t msize = cfg.module_size();
    const detail::SmallDft dft(N);

    std::vector<double> profile(N, 0.0);
    std::vector<detail::cd> fr(N), fs(N), prod(N, detail::cd(0.0, 0.0));
    for (int s = 0; s < cfg.n_s; ++s) {
        const double* a = rotated.module(s, 0);
        const double* b = reference.module(s, 0);
        for (std::size_t e = 0; e < msize; ++e) {
            dft.forward_ring(a + e, msize, fr.data());
            dft.forward_ring(b + e, msize, fs.data());
            for (int k = 0; k < N; ++k) prod[k] += fr[k] * std::conj(fs[k]);
        }
    }
    // One inverse transform of the accumulated cross-spectrum equals the sum
    // of per-ring correlations.
    std::vector<double> tmp(N);
    double max_imag = 0.0;
    dft.inverse_ring(prod.data(), tmp.data(), 1, &max_imag);
    for (int k = 0; k < N; ++k) profile[k] = tmp[k];
    return profile;
}

double decode_angle(const GcTensor& rotated, const GcTensor& reference) {
    const auto profile = angle_profile(rotated, reference);
    const int N = static_cast<int>(profile.size());
    double mean = 0.0;
    double best = profile[0];
    int arg = 0;
    for (int k = 0; k < N; ++k) {
        mean += profile[k];
        if (profile[k] > best) {
            best = profile[k];
            arg = k;
        }
    }
    mean /= N;
    if (!(mean > 0.0) || best / mean < kFlatnessRatio)
        throw std::runtime_error("angle undecodable");
    return arg * 2.0 * std::numbers::pi / N;
}

}  // namespace gcvsa
