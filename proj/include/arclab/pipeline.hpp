#pragma once

// Orchestration: assemble C = chi_infinity * prod_p chi_p, sweep the box
// size through all cross-checks, and emit the machine-readable report
// (JSON plus a CSV companion for plotting). Hard checks are identities and
// oracle equivalences; asymptotic trends are recorded, never asserted.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "arclab/counting.hpp"
#include "arclab/oscint.hpp"

namespace arclab {

struct VerifyOptions {
  std::vector<long> Bs{20, 30, 40, 50};
  long primes = 100;        // Euler product over p <= primes
  long depth = 2048;        // prime-power moduli capped at p^h <= depth
  std::uint64_t seed = 42;  // master seed for every sampled diagnostic
  double delta = 1.0 / 9.0;
  QuadConfig quad;          // quad.mc_seed is overridden by seed
  std::string out = "report.json";
  std::size_t memory_budget = kDefaultMemoryBudget;
};

struct VerifyResult {
  std::string json_text;  // exactly the bytes written to the JSON file
  std::string json_path;
  std::string csv_path;
  int hard_failures = 0;
};

// C = J1 * prod_{p <= P} chi_p(H); the error bar combines quadrature
// stability, the singular-integral tail, and the Euler tail heuristic.
std::pair<double, double> compute_C(long P, long H,
                                    const QuadConfig& quad = {});

// Runs the full sweep, writes opt.out and the CSV next to it, and returns
// the report together with the number of failed hard checks (the intended
// process exit code).
VerifyResult run_verify(const VerifyOptions& opt);

}  // namespace arclab
