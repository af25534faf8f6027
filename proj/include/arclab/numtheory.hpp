#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace arclab {

inline std::vector<long> primes_up_to(long n) {
  std::vector<long> out;
  if (n < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
  for (long i = 2; i <= n; ++i) {
    if (composite[static_cast<std::size_t>(i)]) continue;
    out.push_back(i);
    for (long j = 2 * i; j <= n; j += i) composite[static_cast<std::size_t>(j)] = true;
  }
  return out;
}

inline std::vector<std::pair<long, int>> factorize(long n) {
  if (n < 1) throw std::invalid_argument("factorize: n must be positive");
  std::vector<std::pair<long, int>> f;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    int e = 0;
    while (n % d == 0) { n /= d; ++e; }
    f.emplace_back(d, e);
  }
  if (n > 1) f.emplace_back(n, 1);
  return f;
}

inline bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline int mobius(long n) {
  int mu = 1;
  for (const auto& [p, e] : factorize(n)) {
    (void)p;
    if (e > 1) return 0;
    mu = -mu;
  }
  return mu;
}

inline long euler_phi(long n) {
  long phi = n;
  for (const auto& [p, e] : factorize(n)) {
    (void)e;
    phi -= phi / p;
  }
  return phi;
}

inline std::vector<std::int64_t> divisors(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("divisors: n must be positive");
  std::vector<std::int64_t> out;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    if (d != n / d) out.push_back(n / d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Ramanujan sum c_q(k) = sum over coprime residues a of e(ka/q),
// via the divisor form sum_{d | gcd(q,k)} d mu(q/d). Used as the oracle
// for the literal arc-center phase sums.
inline std::int64_t ramanujan_sum(long q, std::int64_t k) {
  const long g = static_cast<long>(std::gcd<std::int64_t>(q, k < 0 ? -k : k));
  const long gg = (k == 0) ? q : g;
  std::int64_t c = 0;
  for (std::int64_t d : divisors(gg)) c += d * mobius(q / static_cast<long>(d));
  return c;
}

inline std::uint64_t ipow_u64(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  while (exp--) {
    if (base != 0 && r > UINT64_MAX / base)
      throw std::overflow_error("ipow_u64: overflow");
    r *= base;
  }
  return r;
}

}  // namespace arclab
