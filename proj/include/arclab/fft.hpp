#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace arclab {

using cdouble = std::complex<double>;

std::size_t next_pow2(std::size_t n);

// In-place radix-2 FFT, size must be a power of two.
// Computes X[k] = sum_j x[j] e(sign * jk / n); no normalization either way.
void fft_pow2(std::vector<cdouble>& a, int sign);

// DFT of arbitrary length (Bluestein chirp when n is not a power of two).
// Same convention as fft_pow2.
std::vector<cdouble> dft_any(const std::vector<cdouble>& x, int sign);

// Direct O(n^2) evaluation of the same sum; the oracle for the fast routes.
std::vector<cdouble> dft_direct(const std::vector<cdouble>& x, int sign);

// Linear convolution c[t] = sum_j a[j] b[t-j] via zero-padded FFTs.
std::vector<cdouble> convolve(const std::vector<cdouble>& a,
                              const std::vector<cdouble>& b);

// Real-input convenience wrapper for the big correlation sweeps.
std::vector<double> convolve_real(const std::vector<double>& a,
                                  const std::vector<double>& b);

}  // namespace arclab
