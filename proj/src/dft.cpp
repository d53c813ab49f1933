#include "gcvsa/dft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gcvsa::detail {

SmallDft::SmallDft(int n) : n_(n), w_(n), tmp_(n) {
    if (n < 1) throw std::invalid_argument("dft: size must be >= 1");
    for (int j = 0; j < n; ++j) {
        const double a = -2.0 * std::numbers::pi * j / n;
        w_[j] = cd(std::cos(a), std::sin(a));
    }
}

void SmallDft::forward_line(cd* x, std::size_t stride) const {
    for (int k = 0; k < n_; ++k) {
        cd acc(0.0, 0.0);
        for (int j = 0; j < n_; ++j)
            acc += x[j * stride] * w_[(static_cast<std::size_t>(j) * k) % n_];
        tmp_[k] = acc;
    }
    for (int k = 0; k < n_; ++k) x[k * stride] = tmp_[k];
}

void SmallDft::inverse_line(cd* x, std::size_t stride) const {
    const double inv = 1.0 / n_;
    for (int j = 0; j < n_; ++j) {
        cd acc(0.0, 0.0);
        for (int k = 0; k < n_; ++k)
            acc += x[k * stride] * std::conj(w_[(static_cast<std::size_t>(j) * k) % n_]);
        tmp_[j] = acc * inv;
    }
    for (int j = 0; j < n_; ++j) x[j * stride] = tmp_[j];
}

void SmallDft::forward3(const double* m, cd* out) const {
    const int n = n_;
    const std::size_t n2 = static_cast<std::size_t>(n) * n;
    for (std::size_t i = 0; i < n2 * n; ++i) out[i] = cd(m[i], 0.0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            forward_line(out + a * n2 + b * n, 1);
    for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c)
            forward_line(out + a * n2 + c, n);
    for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
            forward_line(out + b * n + c, n2);
}

void SmallDft::inverse3(cd* buf, double* out, double scale,
                        double* max_imag) const {
    const int n = n_;
    const std::size_t n2 = static_cast<std::size_t>(n) * n;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            inverse_line(buf + a * n2 + b * n, 1);
    for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c)
            inverse_line(buf + a * n2 + c, n);
    for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
            inverse_line(buf + b * n + c, n2);
    double worst = 0.0;
    for (std::size_t i = 0; i < n2 * n; ++i) {
        const cd v = buf[i] * scale;
        out[i] = v.real();
        const double im = std::abs(v.imag());
        if (im > worst) worst = im;
    }
    if (max_imag) *max_imag = worst;
}

void SmallDft::forward_ring(const double* x, std::size_t stride, cd* out) const {
    for (int k = 0; k < n_; ++k) {
        cd acc(0.0, 0.0);
        for (int j = 0; j < n_; ++j)
            acc += x[j * stride] * w_[(static_cast<std::size_t>(j) * k) % n_];
        out[k] = acc;
    }
}

void SmallDft::inverse_ring(cd* buf, double* x, std::size_t stride,
                            double* max_imag) const {
    const double inv = 1.0 / n_;
    double worst = 0.0;
    for (int j = 0; j < n_; ++j) {
        cd acc(0.0, 0.0);
        for (int k = 0; k < n_; ++k)
            acc += buf[k] * std::conj(w_[(static_cast<std::size_t>(j) * k) % n_]);
        acc *= inv;
        x[j * stride] = acc.real();
        const double im = std::abs(acc.imag());
        if (im > worst) worst = im;
    }
    if (max_imag) *max_imag = worst;
}

}  // namespace gcvsa::detail
