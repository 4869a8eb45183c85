#include "fft.hpp"

#include <cmath>
#include <stdexcept>

namespace oscbath::fft {

void fft_pow2(std::vector<std::complex<double>>& a, bool inverse)
{
    const size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fft_pow2: size must be a power of two");

    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * M_PI / double(len) * (inverse ? 1.0 : -1.0);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (size_t j = 0; j < len / 2; ++j) {
                const std::complex<double> u = a[i + j];
                const std::complex<double> v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse)
        for (auto& x : a) x /= double(n);
}

std::vector<std::complex<double>> dft(const std::vector<std::complex<double>>& x, bool inverse)
{
    const size_t n = x.size();
    if (n == 0) return {};
    if ((n & (n - 1)) == 0) {
        auto a = x;
        fft_pow2(a, inverse);
        return a;
    }
    // Bluestein: with the chirp c_n = e^{s i pi n^2 / N} (s = -1 forward),
    // e^{s 2pi i nk/N} = c_n c_k conj(c_{k-n}), so
    // X_k = c_k sum_n (x_n c_n) conj(c_{k-n})
    const double sgn = inverse ? 1.0 : -1.0;
    std::vector<std::complex<double>> c(n);
    for (size_t i = 0; i < n; ++i) {
        // n^2 mod 2N avoids precision loss for large indices
        const double phase = M_PI * double((i * i) % (2 * n)) / double(n);
        c[i] = {std::cos(phase), sgn * std::sin(phase)};
    }
    size_t m = 1;
    while (m < 2 * n - 1) m <<= 1;
    std::vector<std::complex<double>> fa(m, {0.0, 0.0}), fb(m, {0.0, 0.0});
    for (size_t i = 0; i < n; ++i) fa[i] = x[i] * c[i];
    fb[0] = std::conj(c[0]);
    for (size_t i = 1; i < n; ++i) fb[i] = fb[m - i] = std::conj(c[i]);
    fft_pow2(fa, false);
    fft_pow2(fb, false);
    for (size_t i = 0; i < m; ++i) fa[i] *= fb[i];
    fft_pow2(fa, true);
    std::vector<std::complex<double>> out(n);
    for (size_t i = 0; i < n; ++i) out[i] = fa[i] * c[i];
    if (inverse)
        for (auto& v : out) v /= double(n);
    return out;
}

Dst1::Dst1(int n) : n_(n)
{
    m_ = 2 * (n + 1);
    norm_ = std::sqrt(2.0 / double(n + 1));
    size_t m = 1;
    while ((int)m < 2 * m_ - 1) m <<= 1;
    fft_len_ = (int)m;
    chirp_.resize(m_);
    for (int i = 0; i < m_; ++i) {
        const double phase = M_PI * double((size_t(i) * i) % size_t(2 * m_)) / double(m_);
        chirp_[i] = {std::cos(phase), -std::sin(phase)};
    }
    std::vector<std::complex<double>> fb(m, {0.0, 0.0});
    fb[0] = std::conj(chirp_[0]);
    for (int i = 1; i < m_; ++i) fb[i] = fb[m - i] = std::conj(chirp_[i]);
    fft_pow2(fb, false);
    kernel_fft_ = std::move(fb);
}

void Dst1::apply(const double* in, double* out) const
{
    // odd extension y = [0, x_1..x_N, 0, -x_N..-x_1]; DFT; S_k = -Im(Y_k)/2
    std::vector<std::complex<double>> fa(fft_len_, {0.0, 0.0});
    auto load = [&](int idx, double v) { fa[idx] = v * chirp_[idx]; };
    load(0, 0.0);
    for (int i = 0; i < n_; ++i) load(i + 1, in[i]);
    load(n_ + 1, 0.0);
    for (int i = 0; i < n_; ++i) load(n_ + 2 + i, -in[n_ - 1 - i]);

    fft_pow2(fa, false);
    for (int i = 0; i < fft_len_; ++i) fa[i] *= kernel_fft_[i];
    fft_pow2(fa, true);

    for (int k = 1; k <= n_; ++k) {
        const std::complex<double> Yk = fa[k] * chirp_[k];
        out[k - 1] = -0.5 * Yk.imag() * norm_;
    }
}

} // namespace oscbath::fft
