#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "arclab/oscint.hpp"
#include "arclab/pipeline.hpp"

using nlohmann::json;

namespace {

arclab::QuadConfig smoke_quad() {
  arclab::QuadConfig cfg;
  cfg.outer_radius = 40.0;
  cfg.mc_samples = 40'000;
  cfg.eta_sequence = {0.2, 0.1, 0.05, 0.015, 0.01};
  return cfg;
}

arclab::VerifyOptions smoke_options(std::vector<long> Bs, std::string out) {
  arclab::VerifyOptions opt;
  opt.Bs = std::move(Bs);
  opt.primes = 20;
  opt.depth = 64;
  opt.quad = smoke_quad();
  opt.out = std::move(out);
  return opt;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const json* find_check(const json& report, const std::string& name) {
  for (const json& chk : report.at("hard_checks"))
    if (chk.at("name").get<std::string>() == name) return &chk;
  return nullptr;
}

}  // namespace

TEST_CASE("constant assembly: depth-one Euler factor doubles the integral") {
  const arclab::QuadConfig cfg = smoke_quad();
  const auto [C, bar] = arclab::compute_C(2, 1, cfg);
  const arclab::J1Result j1 = arclab::eval_J1(cfg);
  CHECK(C == doctest::Approx(2.0 * j1.value).epsilon(1e-12));
  CHECK(C > 0.0);
  CHECK(bar > 0.0);
}

TEST_CASE("verify run: report structure, invariants, and route tags") {
  const arclab::VerifyResult res =
      run_verify(smoke_options({2, 4}, "smoke_a.json"));
  CHECK(res.hard_failures == 0);

  const json report = json::parse(res.json_text);
  for (const char* key :
       {"version", "inputs", "singular_series", "singular_integral", "C_hat",
        "counts", "linear_spaces", "trends", "hard_checks", "hard_failures"})
    CHECK_MESSAGE(report.contains(key), key);

  CHECK(report.at("hard_failures").get<int>() == 0);
  CHECK(report.at("linear_spaces").at("count").get<int>() == 45);
  CHECK(report.at("linear_spaces").at("six_variable_pairings").get<int>() ==
        15);

  const json& counts = report.at("counts");
  REQUIRE(counts.size() == 2);
  for (const json& row : counts) {
    CHECK(row.at("N_major").at("route").get<std::string>() ==
          "arc-dissection-fft");
    CHECK(row.at("N_major").contains("error_bar"));
    CHECK(row.at("diagnostics").contains("ratio_minor_to_45"));
    CHECK(row.at("diagnostics").contains("weyl_sup_ratio"));
  }
  // two sweep points are enough for trend lines
  CHECK_FALSE(report.at("trends").is_null());

  // the written file holds exactly the returned bytes
  CHECK(slurp(res.json_path) == res.json_text);

  // companion CSV: header plus one line per B
  const std::string csv = slurp(res.csv_path);
  CHECK(csv.rfind("B,", 0) == 0);
  const long lines = std::count(csv.begin(), csv.end(), '\n');
  CHECK(lines == 3);
}

TEST_CASE("verify run: identical inputs give byte-identical reports") {
  const arclab::VerifyResult a =
      run_verify(smoke_options({2, 4}, "smoke_b.json"));
  const arclab::VerifyResult b =
      run_verify(smoke_options({2, 4}, "smoke_c.json"));
  CHECK(a.json_text == b.json_text);
}

TEST_CASE("verify run: unit box anchor appears and passes") {
  const arclab::VerifyResult res =
      run_verify(smoke_options({1}, "smoke_anchor.json"));
  CHECK(res.hard_failures == 0);
  const json report = json::parse(res.json_text);
  const json* anchor = find_check(report, "anchor_N_B1");
  REQUIRE(anchor != nullptr);
  CHECK(anchor->at("passed").get<bool>());
  CHECK(report.at("counts").at(0).at("N_exact").at("value").get<long>() ==
        2679);
  // a single sweep point has no trend to report
  CHECK(report.at("trends").is_null());
}
