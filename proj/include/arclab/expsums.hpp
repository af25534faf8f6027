#pragma once

// Complete exponential sums S(q,a1,a2), the multiplicative coefficient A(q),
// truncated singular series, p-adic densities chi_p, and the congruence
// counts M_p(h) they predict.

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

namespace arclab {

using cdouble = std::complex<double>;

// S(q,a,b) for every coprime a in [1,q] and every b in [1,q] (column b = q
// is the b == 0 column).
struct ExpSumTable {
  long q = 1;
  std::vector<long> coprime_a;
  std::vector<cdouble> values;  // coprime_a.size() x q, row-major

  const cdouble* row(std::size_t a_index) const {
    return values.data() + a_index * static_cast<std::size_t>(q);
  }
  cdouble at(long a, long b) const;
};

struct SeriesCoefficient {
  long q = 1;
  double A = 1.0;
};

struct LocalDensity {
  long p = 2;
  int H = 0;
  double value = 1.0;
  double tail_estimate = 0.0;  // heuristic, from the observed decay
};

// Structural modulus cap: double-precision phase accumulation is validated
// well below this, and the series/chi_p machinery never needs more.
constexpr long kModulusCap = 4096;

// S(q,a1,a2) = sum_{r mod q} e_q(a1 r^3 + a2 r), exact q-term sum.
cdouble eval_S(long q, std::int64_t a1, std::int64_t a2);

// All b-columns for fixed a at once via a length-q DFT of (e_q(a r^3))_r.
std::vector<cdouble> eval_S_row(long q, long a);

ExpSumTable build_exp_sum_table(long q);

// A(q) = q^{-10} sum_{(a,q)=1} (sum_b S(q,a,b)^6)(sum_c S(q,a,c)^4).
SeriesCoefficient eval_A(long q);

// lhs = sum_b S(q,a,b)^4; rhs = q * sum_{r1,r2,r3 mod q}
// e_q(-3a(r1+r2)(r2+r3)(r3+r1)). The two agree identically.
std::pair<double, double> lemma71_identity(long q, long a);

// T(q,a) = sum over 8-tuples y mod q of e_q(a Psi(y)), where Psi is the
// eliminated-variable form of the cubic; computed through the mod-q
// (linear,cubic)-slice tables (5+3 split), so it is an independent route to
// q^{-2} (sum_b S(q,a,b)^6)(sum_c S(q,a,c)^4).
cdouble eval_T(long q, long a);

// sum_{q <= Q} A(q), composite A(q) assembled by multiplicativity from
// cached prime-power values.
double singular_series(long Q);

// Partial local density sum_{h=0}^{H} A(p^h) with a heuristic geometric
// tail estimate whose ratio is fitted on the trailing increments' decay.
LocalDensity chi_p(long p, int H, long modulus_cap = kModulusCap);

// Exact number of solutions of the full system modulo p^h.
std::uint64_t count_Mp(long p, int h);

// prod_{p <= P} chi_p(p, min(H, cap exponent)); returns (value, heuristic
// tail estimate covering both the p > P primes and the per-p truncations).
std::pair<double, double> euler_product(long P, int H,
                                        long modulus_cap = kModulusCap);

// max over q <= q_max, coprime a, all b of |S(q,a,b)| / q^{2/3}
// (diagnostic for the Hua-type bound).
double hua_ratio_max(long q_max);

}  // namespace arclab
