#pragma once

// The Hardy-Littlewood dissection: major-arc construction around the
// rationals a/q, the generating function f and its major-arc approximant
// f*, and exact evaluation of the arc-restricted integrals u(n; M) as
// integrals of a trigonometric polynomial (closed form per arc and per
// frequency; never numerical quadrature of f^6).

#include <complex>
#include <cstdint>
#include <vector>

#include "arclab/counting.hpp"

namespace arclab {

using cdouble = std::complex<double>;

struct Arc {
  long q = 1;
  long a = 0;
  double center = 0.0;      // a/q
  double half_width = 0.0;  // B^{delta-3}
  double lo = 0.0, hi = 0.0;  // clipped to [0,1]
};

struct ArcSet {
  double B = 1.0;
  double delta = 1.0 / 9.0;
  double half_width = 0.0;
  bool full_circle = false;  // degenerate case: the arcs cover all of [0,1)
  std::vector<Arc> arcs;     // sorted by lo, pairwise disjoint

  double measure() const;
  // index of the arc containing alpha (wrapped into [0,1)), or -1
  long find(double alpha) const;
};

struct ArcIntegralReport {
  std::int64_t n = 0;
  double u_major = 0.0;
  double u_minor = 0.0;
  double N_major = 0.0;  // filled by the aggregate sweep
  double N_minor = 0.0;
};

// All arcs |alpha - a/q| <= B^{delta-3} for 0 <= a <= q <= B^delta,
// gcd(a,q) = 1, endpoints wrapped into [0,1].  Throws std::runtime_error
// if the arcs intersect (B too small for the given delta).
ArcSet build_major_arcs(double B, double delta = 1.0 / 9.0);

// f(alpha,beta) = sum_{|x| <= B} e(alpha x^3 + beta x); real by the
// x -> -x pairing, asserted, and returned as a real number.
double eval_f(double alpha, double beta, long B);

// f*(alpha,beta) = q^{-1} S(q,a,b) v(alpha - a/q, beta - b/q; B) with
// (q,a) the arc containing alpha and b the nearest fraction over q.
// Throws std::domain_error when alpha is on no arc.
cdouble eval_fstar(double alpha, double beta, long B, const ArcSet& arcs);

// sum over arcs of the elementary integral of e(alpha k); real and even
// in k.  k = 0 returns the total measure.
double arc_kernel(const ArcSet& arcs, std::int64_t k);

// the same integral over the complement of the arcs, evaluated from the gap
// endpoints' own closed forms (not as measure-minus-arc_kernel); for integer
// k != 0 it telescopes against arc_kernel to exactly zero.
double gap_kernel(const ArcSet& arcs, std::int64_t k);

// u(n; m): the minor-arc integral swept directly against gap_kernel, an
// independent route to r6(n) - u_major(n).
double u_minor_direct(const RepCounts& r6, std::int64_t n, const ArcSet& arcs);

// u(n; M) = sum_m r6(m) K(m-n) by direct frequency sweep (one n), with
// u_minor = r6(n) - u_major.
ArcIntegralReport u_on_arcs(const RepCounts& r6, std::int64_t n,
                            const ArcSet& arcs);

// The same u_major for every n in [n_min, n_max] via one FFT convolution
// of the r6 table against the arc kernel.
std::vector<double> u_major_all(const RepCounts& r6, const ArcSet& arcs,
                                std::int64_t n_min, std::int64_t n_max,
                                std::size_t memory_budget =
                                    kDefaultMemoryBudget);

struct SplitResult {
  double N_major = 0.0;
  double N_minor = 0.0;
  std::uint64_t N_exact = 0;
};

// N_major = sum_n u(n; M) v(n) and N_minor = sum_n (r6(n) - u(n; M)) v(n),
// accumulated separately so that N_major + N_minor vs N_exact is a real
// floating-point consistency check rather than an identity by construction.
SplitResult N_split(const RepCounts& r6, const RepCounts& r4,
                    const ArcSet& arcs,
                    std::size_t memory_budget = kDefaultMemoryBudget);
SplitResult N_split(long B, double delta = 1.0 / 9.0,
                    std::size_t memory_budget = kDefaultMemoryBudget);

// max |f(alpha,gamma)| over `samples` minor-arc alphas and a gamma grid.
double weyl_sup_sample(long B, const ArcSet& arcs, long samples,
                       std::uint64_t seed);

}  // namespace arclab
