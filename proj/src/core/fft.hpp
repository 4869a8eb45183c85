#pragma once

#include <complex>
#include <vector>

namespace oscbath::fft {

/// In-place radix-2 FFT; size must be a power of two.
void fft_pow2(std::vector<std::complex<double>>& a, bool inverse);

/// DFT of arbitrary length via Bluestein's chirp-z algorithm.
std::vector<std::complex<double>> dft(const std::vector<std::complex<double>>& x, bool inverse);

/// Orthonormal DST-I: X_k = sqrt(2/(N+1)) sum_{i=1..N} x_i sin(pi k i /(N+1)).
/// Involutory (its own inverse). Plans (chirp tables) are cached per length.
class Dst1 {
public:
    explicit Dst1(int n);
    void apply(const double* in, double* out) const;
    int size() const { return n_; }

private:
    int n_;
    int m_;                                   // 2(n+1), the odd-extension DFT length
    int fft_len_;                             // power of two >= 2m-1
    std::vector<std::complex<double>> chirp_; // e^{-i pi k^2 / m}
    std::vector<std::complex<double>> kernel_fft_;
    double norm_;
};

} // namespace oscbath::fft
