#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace arclab {

// Thrown when a requested enumeration would blow the configured memory or
// operation budget; callers decide whether to retry smaller.
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr std::size_t kDefaultMemoryBudget = std::size_t(2) << 30;  // 2 GiB

// Box half-width: coordinates range over [-B, B].
struct CountBound {
  long B = 0;
  explicit CountBound(long b) : B(b) {
    if (b < 0) throw std::invalid_argument("CountBound: B must be >= 0");
  }
};

// (sigma, kappa) -> number of triples in [-B,B]^3 with linear sum sigma and
// cubic sum kappa. Stored grouped by sigma with each group sorted by kappa,
// which is exactly the layout the six-variable join consumes: a sigma group
// only ever pairs with the (-sigma) group.
struct SliceEntry {
  std::int64_t kappa;
  std::uint64_t count;
};

struct SliceTable {
  long B = 0;
  int arity = 3;
  std::int64_t sigma_min = 0;
  std::vector<std::vector<SliceEntry>> groups;  // index sigma - sigma_min

  const std::vector<SliceEntry>& group(std::int64_t sigma) const;
  std::uint64_t at(std::int64_t sigma, std::int64_t kappa) const;
  std::uint64_t total_mass() const;
};

enum class RepKind { r4, r6, r4_mod_q, r6_mod_q };

// Dense integer-keyed table n -> count over a symmetric window (or over
// residues [0,q) for the mod-q kinds). The r6 support really is dense in
// its window at every feasible B, so an array beats any sparse map.
struct RepCounts {
  RepKind kind = RepKind::r4;
  std::int64_t n_min = 0;
  std::vector<std::uint64_t> counts;

  std::int64_t n_max() const {
    return n_min + static_cast<std::int64_t>(counts.size()) - 1;
  }
  std::uint64_t at(std::int64_t n) const {
    const std::int64_t i = n - n_min;
    if (i < 0 || static_cast<std::size_t>(i) >= counts.size()) return 0;
    return counts[static_cast<std::size_t>(i)];
  }
  std::uint64_t total_mass() const;
};

// One perfect pairing: three index pairs from {0..5} plus two from {6..9},
// each pair constrained x_i + x_j = 0.
struct LinearSpace {
  std::array<std::pair<int, int>, 3> six;
  std::array<std::pair<int, int>, 2> four;
};

struct LinearSpaceFamily {
  std::vector<std::array<std::pair<int, int>, 3>> six_pairings;   // 15
  std::vector<std::array<std::pair<int, int>, 2>> four_pairings;  // 3
  std::vector<LinearSpace> members;                               // 45
};

SliceTable build_slice_table(CountBound bound,
                             std::size_t memory_budget = kDefaultMemoryBudget);

// v(n): 4-tuples in [-B,B]^4 with zero linear sum and cubic sum n.
RepCounts count_r4(CountBound bound,
                   std::size_t memory_budget = kDefaultMemoryBudget);

// v(n) for a single nonzero n by factoring -n/3 = u*v*w and back-solving the
// coordinates; returns 0 when 3 does not divide n.
std::uint64_t count_v_divisor(std::int64_t n, CountBound bound);

// r6(n): 6-tuples with zero linear sum and cubic sum n, via the slice join.
RepCounts count_r6(CountBound bound,
                   std::size_t memory_budget = kDefaultMemoryBudget);

// N(B) = sum_n r6(n) v(n): solutions of the full ten-variable system.
std::uint64_t count_N(CountBound bound,
                      std::size_t memory_budget = kDefaultMemoryBudget);
std::uint64_t count_N(const RepCounts& r6, const RepCounts& r4);

LinearSpaceFamily build_linear_space_family();

// Points of [-B,B]^10 on a single pairing space: (2B+1)^5, five free
// coordinates.
std::uint64_t count_space_points(CountBound bound);

// Cardinality of the union of all 45 spaces. The family is the full product
// {15 six-variable pairings} x {3 four-variable pairings}, so the union
// factors into (union over 6 vars) * (union over 4 vars); each factor is an
// exact point-set merge.
std::uint64_t count_spaces_union(CountBound bound,
                                 std::size_t memory_budget = kDefaultMemoryBudget);

// The two-family decomposition of v(0): opposite-pair tuples
// (x1+x2 = x3+x4 = 0) plus swapped-multiset tuples ({x1,x2} = {-x3,-x4} with
// x1+x2 != 0); the families are disjoint and exhaust the n = 0 solutions.
std::uint64_t count_v0_structure(CountBound bound);

// Mod-q analogues over (Z/q)^k, built from mod-q slice joins. Cost is O(q^3)
// and memory O(q^2); guarded by the budget.
RepCounts count_r4_mod(long q,
                       std::size_t memory_budget = kDefaultMemoryBudget);
RepCounts count_r6_mod(long q,
                       std::size_t memory_budget = kDefaultMemoryBudget);

}  // namespace arclab
