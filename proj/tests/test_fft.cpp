#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <complex>
#include <vector>

#include "arclab/fft.hpp"
#include "arclab/rng.hpp"

using arclab::cdouble;

namespace {

std::vector<cdouble> random_signal(std::size_t n, std::uint64_t stream) {
  arclab::CounterRng rng(7777, stream);
  std::vector<cdouble> x(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = cdouble(rng.uniform01(2 * i) - 0.5, rng.uniform01(2 * i + 1) - 0.5);
  return x;
}

double max_dev(const std::vector<cdouble>& a, const std::vector<cdouble>& b) {
  REQUIRE(a.size() == b.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace

TEST_CASE("next_pow2 edges") {
  CHECK(arclab::next_pow2(1) == 1);
  CHECK(arclab::next_pow2(2) == 2);
  CHECK(arclab::next_pow2(3) == 4);
  CHECK(arclab::next_pow2(4) == 4);
  CHECK(arclab::next_pow2(5) == 8);
  CHECK(arclab::next_pow2(1023) == 1024);
  CHECK(arclab::next_pow2(1025) == 2048);
}

TEST_CASE("power-of-two transform matches the direct definition") {
  for (std::size_t n : {1u, 2u, 4u, 8u, 64u, 256u}) {
    std::vector<cdouble> x = random_signal(n, n);
    std::vector<cdouble> a = x;
    arclab::fft_pow2(a, +1);
    const std::vector<cdouble> d = arclab::dft_direct(x, +1);
    CHECK(max_dev(a, d) < 1e-9 * static_cast<double>(n));
  }
}

TEST_CASE("fft_pow2 rejects non-power sizes") {
  std::vector<cdouble> x(6);
  CHECK_THROWS_AS(arclab::fft_pow2(x, +1), std::invalid_argument);
}

TEST_CASE("round trip: forward then backward returns n times the input") {
  std::vector<cdouble> x = random_signal(32, 99);
  std::vector<cdouble> a = x;
  arclab::fft_pow2(a, +1);
  arclab::fft_pow2(a, -1);
  for (std::size_t i = 0; i < x.size(); ++i)
    CHECK(std::abs(a[i] - 32.0 * x[i]) < 1e-12 * 32.0);
}

TEST_CASE("arbitrary-size transform matches the direct definition") {
  // primes exercise the chirp path, composites the mixed structure
  for (std::size_t n : {3u, 5u, 7u, 12u, 31u, 97u, 360u}) {
    std::vector<cdouble> x = random_signal(n, 1000 + n);
    const std::vector<cdouble> fast = arclab::dft_any(x, +1);
    const std::vector<cdouble> slow = arclab::dft_direct(x, +1);
    CHECK(max_dev(fast, slow) < 1e-8);
    const std::vector<cdouble> fast_m = arclab::dft_any(x, -1);
    const std::vector<cdouble> slow_m = arclab::dft_direct(x, -1);
    CHECK(max_dev(fast_m, slow_m) < 1e-8);
  }
}

TEST_CASE("complex convolution matches the schoolbook product") {
  const std::vector<cdouble> a = random_signal(13, 5);
  const std::vector<cdouble> b = random_signal(9, 6);
  const std::vector<cdouble> c = arclab::convolve(a, b);
  REQUIRE(c.size() == a.size() + b.size() - 1);
  for (std::size_t t = 0; t < c.size(); ++t) {
    cdouble want = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (t >= i && t - i < b.size()) want += a[i] * b[t - i];
    CHECK(std::abs(c[t] - want) < 1e-10);
  }
}

TEST_CASE("real convolution matches the schoolbook product") {
  arclab::CounterRng rng(4242, 0);
  std::vector<double> a(17), b(23);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = rng.uniform01(i) * 10.0;
  for (std::size_t i = 0; i < b.size(); ++i)
    b[i] = rng.uniform01(100 + i) - 0.5;
  const std::vector<double> c = arclab::convolve_real(a, b);
  REQUIRE(c.size() == a.size() + b.size() - 1);
  for (std::size_t t = 0; t < c.size(); ++t) {
    double want = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (t >= i && t - i < b.size()) want += a[i] * b[t - i];
    CHECK(c[t] == doctest::Approx(want).epsilon(1e-10));
  }
}

TEST_CASE("counter rng is deterministic and in range") {
  arclab::CounterRng a(1, 2), b(1, 2), c(1, 3);
  bool any_diff = false;
  for (std::uint64_t i = 0; i < 64; ++i) {
    const double u = a.uniform01(i);
    CHECK(u == b.uniform01(i));
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    if (u != c.uniform01(i)) any_diff = true;
  }
  CHECK(any_diff);  // different streams decorrelate
}

TEST_CASE("halton sequence: base 2 prefix") {
  CHECK(arclab::halton(1, 2) == doctest::Approx(0.5));
  CHECK(arclab::halton(2, 2) == doctest::Approx(0.25));
  CHECK(arclab::halton(3, 2) == doctest::Approx(0.75));
  CHECK(arclab::halton(1, 3) == doctest::Approx(1.0 / 3.0));
  CHECK(arclab::halton(2, 3) == doctest::Approx(2.0 / 3.0));
}
