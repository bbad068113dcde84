#pragma once

#include "opindex/common.hpp"

#include <vector>

namespace opindex {

// Radix-2 in-place FFT, forward kernel e^{-i 2pi jk/n} (numpy-compatible).
// n must be a power of two.
void fft_inplace(Vec& v, bool inverse);

inline Vec fft(Vec v) {
    fft_inplace(v, false);
    return v;
}
inline Vec ifft(Vec v) {
    fft_inplace(v, true);
    return v;
}

// Frequencies of the length-n FFT in cycles per unit, times 2*pi/d:
// entry k is the angular frequency of bin k for sample spacing d
// (fftfreq layout: 0, 1, ..., n/2-1, -n/2, ..., -1, scaled by 2*pi/(n*d)).
std::vector<double> fft_omega(int n, double spacing);

}  // namespace opindex
