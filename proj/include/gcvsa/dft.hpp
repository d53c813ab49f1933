#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace gcvsa::detail {

using cd = std::complex<double>;

/// Direct O(N^2) DFT for the tiny transforms this library needs (module side
/// lengths of a few, orientation rings of a few dozen). Twiddle factors are
/// precomputed once per instance; construction is cheap enough to do per call.
class SmallDft {
public:
    explicit SmallDft(int n);

    int size() const { return n_; }

    /// Unnormalized forward transform of one strided line, in place.
    void forward_line(cd* x, std::size_t stride) const;

    /// Inverse transform of one strided line (1/N convention), in place.
    void inverse_line(cd* x, std::size_t stride) const;

    /// Unnormalized forward 3D transform of an n^3 real module.
    void forward3(const double* m, cd* out) const;

    /// Inverse 3D transform (1/N^3), scaled by `scale`. Returns the real part
    /// in `out` and the largest |imag| seen (after scaling) in `max_imag`.
    void inverse3(cd* buf, double* out, double scale, double* max_imag) const;

    /// Forward transform of a strided real ring into `out` (length N).
    void forward_ring(const double* x, std::size_t stride, cd* out) const;

    /// Inverse transform of `buf` (length N) scattered back to a strided real
    /// ring; tracks the largest |imag| discarded.
    void inverse_ring(cd* buf, double* x, std::size_t stride,
                      double* max_imag) const;

    /// twiddle(j) = exp(-2*pi*i*j/N), j reduced mod N.
    cd twiddle(std::size_t j) const { return w_[j % n_]; }

private:
    int n_;
    std::vector<cd> w_;
    mutable std::vector<cd> tmp_;
};

}  // namespace gcvsa::detail
