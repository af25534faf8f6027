#include "arclab/counting.hpp"

#include <algorithm>

#include "arclab/numtheory.hpp"

namespace arclab {

namespace {

inline std::int64_t cube(std::int64_t x) { return x * x * x; }

inline std::int64_t cube_mod(std::int64_t x, std::int64_t q) {
  std::int64_t r = ((x % q) + q) % q;
  return r * r % q * r % q;
}

void check_budget(std::size_t bytes, std::size_t budget, const char* what) {
  if (bytes > budget)
    throw CapacityError(std::string(what) + ": needs " +
                        std::to_string(bytes) + " bytes, budget " +
                        std::to_string(budget));
}

}  // namespace

const std::vector<SliceEntry>& SliceTable::group(std::int64_t sigma) const {
  static const std::vector<SliceEntry> empty;
  const std::int64_t i = sigma - sigma_min;
  if (i < 0 || static_cast<std::size_t>(i) >= groups.size()) return empty;
  return groups[static_cast<std::size_t>(i)];
}

std::uint64_t SliceTable::at(std::int64_t sigma, std::int64_t kappa) const {
  const auto& g = group(sigma);
  auto it = std::lower_bound(
      g.begin(), g.end(), kappa,
      [](const SliceEntry& e, std::int64_t k) { return e.kappa < k; });
  if (it != g.end() && it->kappa == kappa) return it->count;
  return 0;
}

std::uint64_t SliceTable::total_mass() const {
  std::uint64_t m = 0;
  for (const auto& g : groups)
    for (const auto& e : g) m += e.count;
  return m;
}

std::uint64_t RepCounts::total_mass() const {
  std::uint64_t m = 0;
  for (std::uint64_t c : counts) m += c;
  return m;
}

SliceTable build_slice_table(CountBound bound, std::size_t memory_budget) {
  const long B = bound.B;
  SliceTable t;
  t.B = B;
  t.sigma_min = -3 * static_cast<std::int64_t>(B);
  t.groups.resize(static_cast<std::size_t>(6 * B + 1));

  std::size_t stored_bytes = t.groups.size() * sizeof(std::vector<SliceEntry>);
  std::vector<std::int64_t> kappas;
  for (std::int64_t sigma = -3 * B; sigma <= 3 * B; ++sigma) {
    kappas.clear();
    const std::int64_t x1_lo = std::max<std::int64_t>(-B, sigma - 2 * B);
    const std::int64_t x1_hi = std::min<std::int64_t>(B, sigma + 2 * B);
    for (std::int64_t x1 = x1_lo; x1 <= x1_hi; ++x1) {
      const std::int64_t rest = sigma - x1;
      const std::int64_t x2_lo = std::max<std::int64_t>(-B, rest - B);
      const std::int64_t x2_hi = std::min<std::int64_t>(B, rest + B);
      const std::int64_t c1 = cube(x1);
      for (std::int64_t x2 = x2_lo; x2 <= x2_hi; ++x2) {
        const std::int64_t x3 = rest - x2;
        kappas.push_back(c1 + cube(x2) + cube(x3));
      }
    }
    std::sort(kappas.begin(), kappas.end());
    auto& g = t.groups[static_cast<std::size_t>(sigma - t.sigma_min)];
    for (std::size_t i = 0; i < kappas.size();) {
      std::size_t j = i;
      while (j < kappas.size() && kappas[j] == kappas[i]) ++j;
      g.push_back({kappas[i], static_cast<std::uint64_t>(j - i)});
      i = j;
    }
    g.shrink_to_fit();
    stored_bytes += g.size() * sizeof(SliceEntry);
    check_budget(stored_bytes, memory_budget, "build_slice_table");
  }
  return t;
}

RepCounts count_r4(CountBound bound, std::size_t memory_budget) {
  const long B = bound.B;
  const std::int64_t W = 4 * cube(B);
  RepCounts out;
  out.kind = RepKind::r4;
  out.n_min = -W;
  check_budget((static_cast<std::size_t>(2 * W) + 1) * sizeof(std::uint64_t),
               memory_budget, "count_r4");
  out.counts.assign(static_cast<std::size_t>(2 * W) + 1, 0);
  for (std::int64_t x1 = -B; x1 <= B; ++x1) {
    const std::int64_t c1 = cube(x1);
    for (std::int64_t x2 = -B; x2 <= B; ++x2) {
      const std::int64_t c12 = c1 + cube(x2);
      const std::int64_t s12 = x1 + x2;
      for (std::int64_t x3 = -B; x3 <= B; ++x3) {
        const std::int64_t x4 = -(s12 + x3);
        if (x4 < -B || x4 > B) continue;
        const std::int64_t n = c12 + cube(x3) + cube(x4);
        ++out.counts[static_cast<std::size_t>(n + W)];
      }
    }
  }
  return out;
}

std::uint64_t count_v_divisor(std::int64_t n, CountBound bound) {
  if (n == 0)
    throw std::invalid_argument(
        "count_v_divisor: n = 0 degenerates, use count_r4");
  if (n % 3 != 0) return 0;
  const long B = bound.B;
  // n = -3(x1+x2)(x2+x3)(x3+x1), so enumerate ordered factorizations
  // -n/3 = u*v*w and back-solve; integrality needs u+v+w even.
  const std::int64_t m = -n / 3;
  const std::int64_t am = m < 0 ? -m : m;
  std::uint64_t total = 0;
  for (std::int64_t du : divisors(am)) {
    const std::int64_t rem = am / du;
    for (std::int64_t dv : divisors(rem)) {
      const std::int64_t dw = rem / dv;
      for (int su = -1; su <= 1; su += 2) {
        for (int sv = -1; sv <= 1; sv += 2) {
          const std::int64_t u = su * du;
          const std::int64_t v = sv * dv;
          // sign of w is forced by sign(m) = sign(u v w)
          const std::int64_t w = (m > 0 ? 1 : -1) * su * sv * dw;
          if ((u + v + w) % 2 != 0) continue;
          const std::int64_t s = (u + v + w) / 2;
          const std::int64_t x1 = s - v;
          const std::int64_t x2 = s - w;
          const std::int64_t x3 = s - u;
          const std::int64_t x4 = -s;
          if (x1 < -B || x1 > B || x2 < -B || x2 > B || x3 < -B || x3 > B ||
              x4 < -B || x4 > B)
            continue;
          ++total;
        }
      }
    }
  }
  return total;
}

RepCounts count_r6(CountBound bound, std::size_t memory_budget) {
  const long B = bound.B;
  const SliceTable h3 = build_slice_table(bound, memory_budget);
  const std::int64_t W = 6 * cube(B);
  RepCounts out;
  out.kind = RepKind::r6;
  out.n_min = -W;
  check_budget((static_cast<std::size_t>(2 * W) + 1) * sizeof(std::uint64_t),
               memory_budget, "count_r6");
  out.counts.assign(static_cast<std::size_t>(2 * W) + 1, 0);
  std::uint64_t* const c = out.counts.data();
  // r6(n) = sum_sigma sum_kappa h3(sigma,kappa) h3(-sigma,n-kappa); the
  // sigma and -sigma terms are equal, so run sigma >= 0 and double.
  for (std::int64_t sigma = 0; sigma <= 3 * B; ++sigma) {
    const auto& g1 = h3.group(sigma);
    const auto& g2 = h3.group(-sigma);
    const std::uint64_t mult = sigma == 0 ? 1 : 2;
    for (const SliceEntry& e1 : g1) {
      const std::uint64_t base = mult * e1.count;
      const std::int64_t off = e1.kappa + W;
      for (const SliceEntry& e2 : g2)
        c[off + e2.kappa] += base * e2.count;
    }
  }
  return out;
}

std::uint64_t count_N(const RepCounts& r6, const RepCounts& r4) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < r4.counts.size(); ++i) {
    const std::uint64_t v = r4.counts[i];
    if (!v) continue;
    const std::uint64_t r = r6.at(r4.n_min + static_cast<std::int64_t>(i));
    if (!r) continue;
    std::uint64_t prod;
    if (__builtin_mul_overflow(r, v, &prod) ||
        __builtin_add_overflow(total, prod, &total))
      throw std::overflow_error("count_N: exceeds 64-bit range");
  }
  return total;
}

std::uint64_t count_N(CountBound bound, std::size_t memory_budget) {
  return count_N(count_r6(bound, memory_budget),
                 count_r4(bound, memory_budget));
}

namespace {

template <std::size_t P>
void perfect_matchings(std::vector<int>& idx,
                       std::array<std::pair<int, int>, P>& cur,
                       std::size_t depth,
                       std::vector<std::array<std::pair<int, int>, P>>& out) {
  if (idx.empty()) {
    out.push_back(cur);
    return;
  }
  const int first = idx[0];
  for (std::size_t j = 1; j < idx.size(); ++j) {
    const int partner = idx[j];
    std::vector<int> rest;
    for (std::size_t t = 1; t < idx.size(); ++t)
      if (t != j) rest.push_back(idx[t]);
    cur[depth] = {first, partner};
    perfect_matchings(rest, cur, depth + 1, out);
  }
}

}  // namespace

LinearSpaceFamily build_linear_space_family() {
  LinearSpaceFamily f;
  {
    std::vector<int> idx = {0, 1, 2, 3, 4, 5};
    std::array<std::pair<int, int>, 3> cur{};
    perfect_matchings(idx, cur, 0, f.six_pairings);
  }
  {
    std::vector<int> idx = {6, 7, 8, 9};
    std::array<std::pair<int, int>, 2> cur{};
    perfect_matchings(idx, cur, 0, f.four_pairings);
  }
  for (const auto& s : f.six_pairings)
    for (const auto& q : f.four_pairings) f.members.push_back({s, q});
  return f;
}

std::uint64_t count_space_points(CountBound bound) {
  return ipow_u64(static_cast<std::uint64_t>(2 * bound.B + 1), 5);
}

namespace {

// Distinct points covered by all perfect pairings of one block: enumerate
// each pairing's free coordinates, pack the tuple into one 64-bit code, and
// merge. K = pairs per tuple (so 2K coordinates).
template <std::size_t K>
std::uint64_t union_of_pairings(
    long B, const std::vector<std::array<std::pair<int, int>, K>>& pairings,
    int index_base, std::size_t memory_budget) {
  const std::uint64_t side = static_cast<std::uint64_t>(2 * B + 1);
  std::uint64_t pts = 1;
  for (std::size_t k = 0; k < K; ++k) pts *= side;
  check_budget(pairings.size() * pts * sizeof(std::uint64_t) +
                   pts * sizeof(std::uint64_t),
               memory_budget, "count_spaces_union");

  std::uint64_t place[2 * K];
  place[0] = 1;
  for (std::size_t i = 1; i < 2 * K; ++i) place[i] = place[i - 1] * side;

  std::vector<std::uint64_t> codes;
  codes.reserve(pairings.size() * pts);
  long x[2 * K];
  for (const auto& pairing : pairings) {
    long free_val[K];
    for (std::size_t i = 0; i < K; ++i) free_val[i] = -B;
    bool done = false;
    while (!done) {
      for (std::size_t k = 0; k < K; ++k) {
        x[pairing[k].first - index_base] = free_val[k];
        x[pairing[k].second - index_base] = -free_val[k];
      }
      std::uint64_t code = 0;
      for (std::size_t i = 0; i < 2 * K; ++i)
        code += static_cast<std::uint64_t>(x[i] + B) * place[i];
      codes.push_back(code);
      // odometer over the K free coordinates
      std::size_t k = 0;
      while (k < K && ++free_val[k] > B) {
        free_val[k] = -B;
        ++k;
      }
      done = (k == K);
    }
  }
  std::sort(codes.begin(), codes.end());
  return static_cast<std::uint64_t>(
      std::unique(codes.begin(), codes.end()) - codes.begin());
}

}  // namespace

std::uint64_t count_spaces_union(CountBound bound, std::size_t memory_budget) {
  const LinearSpaceFamily f = build_linear_space_family();
  // The 45 spaces form the full product of the two pairing families, and a
  // union of products over a product index set is the product of the unions.
  const std::uint64_t u6 =
      union_of_pairings<3>(bound.B, f.six_pairings, 0, memory_budget);
  const std::uint64_t u4 =
      union_of_pairings<2>(bound.B, f.four_pairings, 6, memory_budget);
  std::uint64_t total;
  if (__builtin_mul_overflow(u6, u4, &total))
    throw std::overflow_error("count_spaces_union: exceeds 64-bit range");
  return total;
}

std::uint64_t count_v0_structure(CountBound bound) {
  const long B = bound.B;
  const std::uint64_t side = static_cast<std::uint64_t>(2 * B + 1);
  // family A: x1 + x2 = 0 and x3 + x4 = 0, so x1 and x3 are free
  const std::uint64_t family_a = side * side;
  // family B: x1 + x2 != 0 and {x3,x4} = {-x1,-x2}; the two orderings of
  // (x3,x4) coincide exactly when x1 == x2
  std::uint64_t family_b = 0;
  for (long x1 = -B; x1 <= B; ++x1)
    for (long x2 = -B; x2 <= B; ++x2) {
      if (x1 + x2 == 0) continue;
      family_b += (x1 == x2) ? 1 : 2;
    }
  return family_a + family_b;
}

RepCounts count_r4_mod(long q, std::size_t memory_budget) {
  if (q < 1) throw std::invalid_argument("count_r4_mod: q must be >= 1");
  if (q > 512) throw CapacityError("count_r4_mod: q beyond O(q^3) budget");
  check_budget(3 * static_cast<std::size_t>(q) * q * sizeof(std::uint64_t),
               memory_budget, "count_r4_mod");
  const std::size_t Q = static_cast<std::size_t>(q);

  // h3[sigma][kappa] over (Z/q)^3, built by convolving the one-variable
  // table with itself twice
  std::vector<std::uint64_t> h2(Q * Q, 0), h3(Q * Q, 0);
  for (long x1 = 0; x1 < q; ++x1)
    for (long x2 = 0; x2 < q; ++x2)
      ++h2[static_cast<std::size_t>((x1 + x2) % q) * Q +
           static_cast<std::size_t>((cube_mod(x1, q) + cube_mod(x2, q)) % q)];
  for (long x3 = 0; x3 < q; ++x3) {
    const std::size_t s3 = static_cast<std::size_t>(x3);
    const std::size_t k3 = static_cast<std::size_t>(cube_mod(x3, q));
    for (std::size_t s = 0; s < Q; ++s) {
      const std::uint64_t* src = &h2[s * Q];
      std::uint64_t* dst = &h3[((s + s3) % Q) * Q];
      for (std::size_t k = 0; k + k3 < Q; ++k) dst[k + k3] += src[k];
      for (std::size_t k = Q - k3; k < Q; ++k) dst[k + k3 - Q] += src[k];
    }
  }

  RepCounts out;
  out.kind = RepKind::r4_mod_q;
  out.n_min = 0;
  out.counts.assign(Q, 0);
  for (long x4 = 0; x4 < q; ++x4) {
    const std::size_t s = static_cast<std::size_t>((q - x4) % q);
    const std::size_t k4 = static_cast<std::size_t>(cube_mod(x4, q));
    const std::uint64_t* row = &h3[s * Q];
    for (std::size_t k = 0; k + k4 < Q; ++k) out.counts[k + k4] += row[k];
    for (std::size_t k = Q - k4; k < Q; ++k) out.counts[k + k4 - Q] += row[k];
  }
  return out;
}

RepCounts count_r6_mod(long q, std::size_t memory_budget) {
  if (q < 1) throw std::invalid_argument("count_r6_mod: q must be >= 1");
  if (q > 512) throw CapacityError("count_r6_mod: q beyond O(q^3) budget");
  check_budget(3 * static_cast<std::size_t>(q) * q * sizeof(std::uint64_t),
               memory_budget, "count_r6_mod");
  const std::size_t Q = static_cast<std::size_t>(q);

  std::vector<std::uint64_t> h2(Q * Q, 0), h3(Q * Q, 0);
  for (long x1 = 0; x1 < q; ++x1)
    for (long x2 = 0; x2 < q; ++x2)
      ++h2[static_cast<std::size_t>((x1 + x2) % q) * Q +
           static_cast<std::size_t>((cube_mod(x1, q) + cube_mod(x2, q)) % q)];
  for (long x3 = 0; x3 < q; ++x3) {
    const std::size_t s3 = static_cast<std::size_t>(x3);
    const std::size_t k3 = static_cast<std::size_t>(cube_mod(x3, q));
    for (std::size_t s = 0; s < Q; ++s) {
      const std::uint64_t* src = &h2[s * Q];
      std::uint64_t* dst = &h3[((s + s3) % Q) * Q];
      for (std::size_t k = 0; k + k3 < Q; ++k) dst[k + k3] += src[k];
      for (std::size_t k = Q - k3; k < Q; ++k) dst[k + k3 - Q] += src[k];
    }
  }

  RepCounts out;
  out.kind = RepKind::r6_mod_q;
  out.n_min = 0;
  out.counts.assign(Q, 0);
  for (std::size_t s = 0; s < Q; ++s) {
    const std::uint64_t* g1 = &h3[s * Q];
    const std::uint64_t* g2 = &h3[((Q - s) % Q) * Q];
    for (std::size_t k1 = 0; k1 < Q; ++k1) {
      const std::uint64_t c1 = g1[k1];
      if (!c1) continue;
      for (std::size_t k2 = 0; k2 + k1 < Q; ++k2)
        out.counts[k1 + k2] += c1 * g2[k2];
      for (std::size_t k2 = Q - k1; k2 < Q; ++k2)
        out.counts[k1 + k2 - Q] += c1 * g2[k2];
    }
  }
  return out;
}

}  // namespace arclab
