#include "arclab/arcs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "arclab/expsums.hpp"
#include "arclab/fft.hpp"
#include "arclab/oscint.hpp"
#include "arclab/quadrature.hpp"
#include "arclab/rng.hpp"

namespace arclab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

double ArcSet::measure() const {
  NeumaierSum s;
  for (const Arc& arc : arcs) s.add(arc.hi - arc.lo);
  return s.value();
}

long ArcSet::find(double alpha) const {
  double a = alpha - std::floor(alpha);
  if (a >= 1.0) a = 0.0;  // alpha within one ulp below an integer
  if (full_circle) return arcs.empty() ? -1 : 0;
  auto it = std::upper_bound(
      arcs.begin(), arcs.end(), a,
      [](double v, const Arc& arc) { return v < arc.lo; });
  if (it == arcs.begin()) return -1;
  --it;
  if (a <= it->hi + 1e-15) return it - arcs.begin();
  return -1;
}

ArcSet build_major_arcs(double B, double delta) {
  if (!(B >= 1.0)) throw std::invalid_argument("build_major_arcs: B >= 1");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("build_major_arcs: delta in (0,1)");

  ArcSet set;
  set.B = B;
  set.delta = delta;
  set.half_width = std::pow(B, delta - 3.0);
  // Nudge before truncating so that exact powers (B = 512, delta = 1/9)
  // land on the intended integer.
  const long Q = static_cast<long>(std::pow(B, delta) * (1.0 + 1e-12));

  if (set.half_width >= 0.5) {
    // The q = 1 arc alone wraps around; the dissection is degenerate and
    // everything is major.
    set.full_circle = true;
    set.arcs.push_back(Arc{1, 0, 0.0, set.half_width, 0.0, 1.0});
    return set;
  }

  for (long q = 1; q <= Q; ++q) {
    for (long a = 0; a <= q; ++a) {
      if (std::gcd(a, q) != 1) continue;  // keeps both 0/1 and 1/1
      const double center = static_cast<double>(a) / static_cast<double>(q);
      Arc arc;
      arc.q = q;
      arc.a = a;
      arc.center = center;
      arc.half_width = set.half_width;
      arc.lo = std::max(0.0, center - set.half_width);
      arc.hi = std::min(1.0, center + set.half_width);
      set.arcs.push_back(arc);
    }
  }
  std::sort(set.arcs.begin(), set.arcs.end(),
            [](const Arc& x, const Arc& y) { return x.lo < y.lo; });
  for (std::size_t i = 0; i + 1 < set.arcs.size(); ++i) {
    if (set.arcs[i + 1].lo < set.arcs[i].hi - 1e-15)
      throw std::runtime_error(
          "build_major_arcs: arcs overlap; B is too small for this delta");
  }
  return set;
}

double eval_f(double alpha, double beta, long B) {
  if (B < 0 || B > 1000000)
    throw std::invalid_argument("eval_f: B out of range");
  if (!std::isfinite(alpha) || !std::isfinite(beta))
    throw std::invalid_argument("eval_f: non-finite frequency");

  // Phases live on the unit circle, so track alpha x^3 + beta x modulo 1
  // in 64-bit fixed point: the products wrap exactly where the fractional
  // part would, with no loss from the size of x^3.
  const double fa = alpha - std::floor(alpha);
  const double fb = beta - std::floor(beta);
  const std::uint64_t a64 =
      static_cast<std::uint64_t>(std::ldexp(fa < 1.0 ? fa : 0.0, 64));
  const std::uint64_t b64 =
      static_cast<std::uint64_t>(std::ldexp(fb < 1.0 ? fb : 0.0, 64));

  NeumaierSum re, im;
  for (long x = -B; x <= B; ++x) {
    const std::uint64_t ux = static_cast<std::uint64_t>(x);
    const std::uint64_t ux3 = static_cast<std::uint64_t>(x * x * x);
    const std::uint64_t t = a64 * ux3 + b64 * ux;
    const double angle = static_cast<double>(t) * 0x1p-64 * kTwoPi;
    re.add(std::cos(angle));
    im.add(std::sin(angle));
  }
  const double tol = 1e-9 * std::max<double>(1.0, static_cast<double>(B));
  if (std::abs(im.value()) > tol)
    throw std::runtime_error("eval_f: sum is not real within tolerance");
  return re.value();
}

cdouble eval_fstar(double alpha, double beta, long B, const ArcSet& arcs) {
  const long idx = arcs.find(alpha);
  if (idx < 0)
    throw std::domain_error("eval_fstar: alpha lies on no major arc");
  const Arc& arc = arcs.arcs[idx];
  const double wrapped = alpha - std::floor(alpha);
  const long q = arc.q;
  const long b =
      static_cast<long>(std::floor(beta * static_cast<double>(q) + 0.5));
  const cdouble s = eval_S(q, arc.a, b);
  const cdouble v =
      eval_v(wrapped - arc.center,
             beta - static_cast<double>(b) / static_cast<double>(q),
             static_cast<double>(B));
  return s * v / static_cast<double>(q);
}

double arc_kernel(const ArcSet& arcs, std::int64_t k) {
  if (k == 0) return arcs.measure();
  const double kk = static_cast<double>(k);
  NeumaierSum s;
  for (const Arc& arc : arcs.arcs)
    s.add(std::sin(kTwoPi * kk * arc.hi) - std::sin(kTwoPi * kk * arc.lo));
  return s.value() / (kTwoPi * kk);
}

double gap_kernel(const ArcSet& arcs, std::int64_t k) {
  if (arcs.full_circle) return 0.0;
  const double kk = static_cast<double>(k);
  NeumaierSum s;
  const auto add_gap = [&](double lo, double hi) {
    if (hi <= lo) return;
    if (k == 0)
      s.add(hi - lo);
    else
      s.add(std::sin(kTwoPi * kk * hi) - std::sin(kTwoPi * kk * lo));
  };
  double prev = 0.0;
  for (const Arc& arc : arcs.arcs) {
    add_gap(prev, arc.lo);
    prev = arc.hi;
  }
  add_gap(prev, 1.0);
  return k == 0 ? s.value() : s.value() / (kTwoPi * kk);
}

double u_minor_direct(const RepCounts& r6, std::int64_t n,
                      const ArcSet& arcs) {
  if (arcs.full_circle) return 0.0;
  NeumaierSum acc;
  for (std::size_t i = 0; i < r6.counts.size(); ++i) {
    if (r6.counts[i] == 0) continue;
    const std::int64_t m = r6.n_min + static_cast<std::int64_t>(i);
    acc.add(static_cast<double>(r6.counts[i]) * gap_kernel(arcs, m - n));
  }
  return acc.value();
}

ArcIntegralReport u_on_arcs(const RepCounts& r6, std::int64_t n,
                            const ArcSet& arcs) {
  ArcIntegralReport rep;
  rep.n = n;
  const double r6n = (n >= r6.n_min && n <= r6.n_max())
                         ? static_cast<double>(r6.at(n))
                         : 0.0;
  if (arcs.full_circle) {
    rep.u_major = r6n;
    rep.u_minor = 0.0;
    return rep;
  }
  NeumaierSum acc;
  for (std::size_t i = 0; i < r6.counts.size(); ++i) {
    if (r6.counts[i] == 0) continue;
    const std::int64_t m = r6.n_min + static_cast<std::int64_t>(i);
    acc.add(static_cast<double>(r6.counts[i]) * arc_kernel(arcs, m - n));
  }
  rep.u_major = acc.value();
  rep.u_minor = r6n - rep.u_major;
  return rep;
}

std::vector<double> u_major_all(const RepCounts& r6, const ArcSet& arcs,
                                std::int64_t n_min, std::int64_t n_max,
                                std::size_t memory_budget) {
  if (n_max < n_min)
    throw std::invalid_argument("u_major_all: empty frequency window");
  const std::size_t out_len = static_cast<std::size_t>(n_max - n_min) + 1;
  std::vector<double> out(out_len, 0.0);
  if (arcs.full_circle) {
    for (std::size_t i = 0; i < out_len; ++i) {
      const std::int64_t n = n_min + static_cast<std::int64_t>(i);
      if (n >= r6.n_min && n <= r6.n_max())
        out[i] = static_cast<double>(r6.at(n));
    }
    return out;
  }

  // u(n) = sum_m r6(m) K(m-n) and K is even, so this is the plain
  // convolution of the r6 table with the kernel sampled on every
  // difference the two windows can produce.
  const std::int64_t k_lo = n_min - r6.n_max();
  const std::int64_t k_hi = n_max - r6.n_min;
  const std::size_t klen = static_cast<std::size_t>(k_hi - k_lo) + 1;

  const std::size_t fft_len =
      next_pow2(r6.counts.size() + klen - 1);
  if (fft_len > memory_budget / (3 * sizeof(cdouble)))
    throw CapacityError("u_major_all: convolution exceeds memory budget");

  std::vector<double> a(r6.counts.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    a[i] = static_cast<double>(r6.counts[i]);
  std::vector<double> kern(klen);
  for (std::size_t j = 0; j < klen; ++j)
    kern[j] = arc_kernel(arcs, k_lo + static_cast<std::int64_t>(j));

  const std::vector<double> conv = convolve_real(a, kern);
  // index of n in conv: n = (r6.n_min + i) + (k_lo + j) at t = i + j
  for (std::size_t i = 0; i < out_len; ++i) {
    const std::int64_t n = n_min + static_cast<std::int64_t>(i);
    out[i] = conv[static_cast<std::size_t>(n - r6.n_min - k_lo)];
  }
  return out;
}

SplitResult N_split(const RepCounts& r6, const RepCounts& r4,
                    const ArcSet& arcs, std::size_t memory_budget) {
  const std::vector<double> umaj =
      u_major_all(r6, arcs, r4.n_min, r4.n_max(), memory_budget);
  NeumaierSum major, minor;
  for (std::size_t i = 0; i < r4.counts.size(); ++i) {
    if (r4.counts[i] == 0) continue;
    const std::int64_t n = r4.n_min + static_cast<std::int64_t>(i);
    const double v = static_cast<double>(r4.counts[i]);
    const double r6n = (n >= r6.n_min && n <= r6.n_max())
                           ? static_cast<double>(r6.at(n))
                           : 0.0;
    major.add(umaj[i] * v);
    minor.add((r6n - umaj[i]) * v);
  }
  SplitResult out;
  out.N_major = major.value();
  out.N_minor = minor.value();
  out.N_exact = count_N(r6, r4);
  return out;
}

SplitResult N_split(long B, double delta, std::size_t memory_budget) {
  const CountBound bound(B);
  const RepCounts r6 = count_r6(bound, memory_budget);
  const RepCounts r4 = count_r4(bound, memory_budget);
  const ArcSet arcs = build_major_arcs(static_cast<double>(B), delta);
  return N_split(r6, r4, arcs, memory_budget);
}

double weyl_sup_sample(long B, const ArcSet& arcs, long samples,
                       std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("weyl_sup_sample: samples");
  if (arcs.full_circle) return 0.0;  // there is no minor arc to sample
  CounterRng rng(seed, 0x9e1);
  constexpr int kGammaGrid = 64;
  double best = 0.0;
  long accepted = 0;
  std::uint64_t counter = 0;
  const std::uint64_t attempt_cap =
      1000 * static_cast<std::uint64_t>(samples) + 1000;
  while (accepted < samples && counter < attempt_cap) {
    const double alpha = rng.uniform01(counter++);
    if (arcs.find(alpha) >= 0) continue;
    ++accepted;
    for (int j = 0; j < kGammaGrid; ++j) {
      const double gamma = (j + 0.5) / kGammaGrid;
      best = std::max(best, std::abs(eval_f(alpha, gamma, B)));
    }
  }
  if (accepted < samples)
    throw std::runtime_error(
        "weyl_sup_sample: rejection sampling starved; arcs nearly cover");
  return best;
}

}  // namespace arclab
