#include "arclab/fft.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>

namespace arclab {

std::size_t next_pow2(std::size_t n) {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

void fft_pow2(std::vector<cdouble>& a, int sign) {
  const std::size_t n = a.size();
  if (n == 0 || (n & (n - 1)) != 0)
    throw std::invalid_argument("fft_pow2: size must be a power of two");

  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }

  std::vector<cdouble> w;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    // fresh roots per stage from polar(): the total work is O(n) trig calls
    // and keeps every twiddle at full precision (no recurrence drift)
    const double ang = sign * 2.0 * M_PI / static_cast<double>(len);
    w.resize(half);
    for (std::size_t k = 0; k < half; ++k)
      w[k] = std::polar(1.0, ang * static_cast<double>(k));
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const cdouble u = a[i + k];
        const cdouble v = a[i + k + half] * w[k];
        a[i + k] = u + v;
        a[i + k + half] = u - v;
      }
    }
  }
}

std::vector<cdouble> dft_direct(const std::vector<cdouble>& x, int sign) {
  const std::size_t n = x.size();
  std::vector<cdouble> X(n);
  for (std::size_t k = 0; k < n; ++k) {
    cdouble acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      // reduce jk mod n in integers before taking the angle
      const std::uint64_t t =
          static_cast<std::uint64_t>(static_cast<__uint128_t>(j) * k % n);
      acc += x[j] * std::polar(1.0, sign * 2.0 * M_PI * static_cast<double>(t) /
                                        static_cast<double>(n));
    }
    X[k] = acc;
  }
  return X;
}

std::vector<cdouble> dft_any(const std::vector<cdouble>& x, int sign) {
  const std::size_t n = x.size();
  if (n == 0) return {};
  if ((n & (n - 1)) == 0) {
    std::vector<cdouble> a = x;
    fft_pow2(a, sign);
    return a;
  }
  // Bluestein: jk = (j^2 + k^2 - (k-j)^2)/2, so with the half-angle chirp
  // c[t] = e(sign t^2 / 2n) the DFT becomes one circular convolution.
  // t^2 is reduced mod 2n in integers so the chirp phase stays exact for
  // large n.
  const std::size_t m = next_pow2(2 * n - 1);
  std::vector<cdouble> chirp(n);
  for (std::size_t t = 0; t < n; ++t) {
    const std::uint64_t t2 = static_cast<std::uint64_t>(
        static_cast<__uint128_t>(t) * t % (2 * n));
    chirp[t] = std::polar(1.0, sign * M_PI * static_cast<double>(t2) /
                                   static_cast<double>(n));
  }
  std::vector<cdouble> u(m, 0.0), v(m, 0.0);
  for (std::size_t t = 0; t < n; ++t) u[t] = x[t] * chirp[t];
  v[0] = std::conj(chirp[0]);
  for (std::size_t t = 1; t < n; ++t) v[t] = v[m - t] = std::conj(chirp[t]);
  fft_pow2(u, -1);
  fft_pow2(v, -1);
  for (std::size_t t = 0; t < m; ++t) u[t] *= v[t];
  fft_pow2(u, +1);
  std::vector<cdouble> X(n);
  for (std::size_t k = 0; k < n; ++k)
    X[k] = chirp[k] * u[k] / static_cast<double>(m);
  return X;
}

std::vector<cdouble> convolve(const std::vector<cdouble>& a,
                              const std::vector<cdouble>& b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t out = a.size() + b.size() - 1;
  const std::size_t m = next_pow2(out);
  std::vector<cdouble> fa(m, 0.0), fb(m, 0.0);
  std::copy(a.begin(), a.end(), fa.begin());
  std::copy(b.begin(), b.end(), fb.begin());
  fft_pow2(fa, -1);
  fft_pow2(fb, -1);
  for (std::size_t t = 0; t < m; ++t) fa[t] *= fb[t];
  fft_pow2(fa, +1);
  std::vector<cdouble> c(out);
  for (std::size_t t = 0; t < out; ++t) c[t] = fa[t] / static_cast<double>(m);
  return c;
}

std::vector<double> convolve_real(const std::vector<double>& a,
                                  const std::vector<double>& b) {
  std::vector<cdouble> ca(a.begin(), a.end()), cb(b.begin(), b.end());
  std::vector<cdouble> cc = convolve(ca, cb);
  std::vector<double> c(cc.size());
  for (std::size_t t = 0; t < cc.size(); ++t) c[t] = cc[t].real();
  return c;
}

}  // namespace arclab
