#include "opindex/fft.hpp"

namespace opindex {

void fft_inplace(Vec& v, bool inverse) {
    const int n = static_cast<int>(v.size());
    require(n > 0 && (n & (n - 1)) == 0, "fft: length must be a power of two");

    // bit reversal
    for (int i = 1, j = 0; i < n; ++i) {
        int bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(v[i], v[j]);
    }

    const double sgn = inverse ? 1.0 : -1.0;
    for (int len = 2; len <= n; len <<= 1) {
        const double ang = sgn * kTwoPi / len;
        const cplx wlen(std::cos(ang), std::sin(ang));
        for (int i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (int k = 0; k < len / 2; ++k) {
                cplx u = v[i + k];
                cplx t = v[i + k + len / 2] * w;
                v[i + k] = u + t;
                v[i + k + len / 2] = u - t;
                w *= wlen;
            }
        }
    }
    if (inverse) v /= static_cast<double>(n);
}

std::vector<double> fft_omega(int n, double spacing) {
    std::vector<double> w(n);
    const double base = kTwoPi / (n * spacing);
    for (int k = 0; k < n; ++k) {
        int f = (k < (n + 1) / 2) ? k : k - n;
        w[k] = base * f;
    }
    return w;
}

}  // namespace opindex
