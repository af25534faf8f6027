// Command-line front end: one subcommand per module, JSON on stdout,
// optional CSV companions for the tabular outputs.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "arclab/arcs.hpp"
#include "arclab/counting.hpp"
#include "arclab/expsums.hpp"
#include "arclab/oscint.hpp"
#include "arclab/pipeline.hpp"

namespace {

using nlohmann::json;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// independent brute force for spot checks: eight free coordinates, the two
// linear constraints eliminate one variable in each block
std::uint64_t oracle_N(long B) {
  if (B < 0 || B > 3)
    throw arclab::CapacityError("oracle: (2B+1)^8 enumeration needs B <= 3");
  std::uint64_t total = 0;
  auto cube = [](long t) { return t * t * t; };
  for (long x1 = -B; x1 <= B; ++x1)
    for (long x2 = -B; x2 <= B; ++x2)
      for (long x3 = -B; x3 <= B; ++x3)
        for (long x4 = -B; x4 <= B; ++x4)
          for (long x5 = -B; x5 <= B; ++x5) {
            const long x6 = -(x1 + x2 + x3 + x4 + x5);
            if (x6 < -B || x6 > B) continue;
            const long c6 = cube(x1) + cube(x2) + cube(x3) + cube(x4) +
                            cube(x5) + cube(x6);
            for (long x7 = -B; x7 <= B; ++x7)
              for (long x8 = -B; x8 <= B; ++x8)
                for (long x9 = -B; x9 <= B; ++x9) {
                  const long x10 = -(x7 + x8 + x9);
                  if (x10 < -B || x10 > B) continue;
                  if (c6 + cube(x7) + cube(x8) + cube(x9) + cube(x10) == 0)
                    ++total;
                }
          }
  return total;
}

void dump_repcounts_csv(const arclab::RepCounts& table,
                        const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << "n,count\n";
  for (std::size_t i = 0; i < table.counts.size(); ++i)
    f << table.n_min + static_cast<std::int64_t>(i) << ','
      << table.counts[i] << '\n';
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

arclab::QuadConfig parse_quad_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open config " + path);
  arclab::QuadConfig cfg;
  std::string line;
  long lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "outer_radius") {
      cfg.outer_radius = std::stod(value);
    } else if (key == "inner_radius") {
      cfg.inner_radius = std::stod(value);
    } else if (key == "panel_rule") {
      cfg.panel_rule = std::stol(value);
    } else if (key == "mc_samples") {
      cfg.mc_samples = std::stoll(value);
    } else if (key == "mc_seed") {
      cfg.mc_seed = std::stoull(value);
    } else if (key == "eta_sequence") {
      cfg.eta_sequence.clear();
      std::stringstream ss(value);
      std::string item;
      while (std::getline(ss, item, ','))
        cfg.eta_sequence.push_back(std::stod(trim(item)));
    } else {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": unknown key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_count(long B, const std::string& mode, const std::string& csv) {
  const auto t0 = std::chrono::steady_clock::now();
  const arclab::CountBound bound(B);
  json out;
  out["B"] = B;
  out["mode"] = mode;
  if (mode == "N") {
    out["value"] = arclab::count_N(bound);
  } else if (mode == "spaces-union") {
    out["value"] = arclab::count_spaces_union(bound);
  } else if (mode == "oracle") {
    out["value"] = oracle_N(B);
  } else {
    const arclab::RepCounts table =
        mode == "r4" ? arclab::count_r4(bound) : arclab::count_r6(bound);
    out["n_min"] = table.n_min;
    out["values"] = table.counts;
    if (!csv.empty()) dump_repcounts_csv(table, csv);
  }
  out["elapsed"] = seconds_since(t0);
  emit(out);
  return 0;
}

int cmd_series(long Q, long hua_qmax) {
  json terms = json::array();
  for (long q = 1; q <= Q; ++q) {
    const arclab::SeriesCoefficient c = arclab::eval_A(q);
    terms.push_back(json{{"q", c.q}, {"A", c.A}});
  }
  json out{{"Q", Q},
           {"value", arclab::singular_series(Q)},
           {"terms", terms}};
  if (hua_qmax > 0) out["hua_ratio_max"] = arclab::hua_ratio_max(hua_qmax);
  emit(out);
  return 0;
}

int cmd_chip(long p, long H, bool with_terms) {
  const arclab::LocalDensity d = arclab::chi_p(p, H);
  json out{{"p", d.p},
           {"H", d.H},
           {"value", d.value},
           {"tail_estimate", d.tail_estimate}};
  if (with_terms) {
    json terms = json::array();
    long power = 1;
    for (long h = 1; h <= H && power <= arclab::kModulusCap / p; ++h) {
      power *= p;
      terms.push_back(json{{"q", power}, {"A", arclab::eval_A(power).A}});
    }
    out["terms"] = terms;
  }
  emit(out);
  return 0;
}

int cmd_euler(long P, long H) {
  const auto r = arclab::euler_product(P, H);
  emit(json{{"P", P}, {"H", H}, {"value", r.first}, {"error_bar", r.second}});
  return 0;
}

int cmd_mp(long p, long h) {
  const std::uint64_t m = arclab::count_Mp(p, h);
  double partial = 0.0;
  long power = 1;
  for (long j = 1; j <= h; ++j) {
    power *= p;
    partial += arclab::eval_A(power).A;
  }
  emit(json{{"p", p},
            {"h", h},
            {"value", m},
            {"normalized", static_cast<double>(m) *
                               std::pow(static_cast<double>(p), -7.0 * h)},
            {"series_partial", 1.0 + partial}});
  return 0;
}

int cmd_singint(const std::string& config_path) {
  arclab::QuadConfig cfg;
  if (!config_path.empty()) cfg = parse_quad_config(config_path);
  const arclab::DensityEstimate fourier = arclab::density_fourier(cfg);
  const arclab::DensityEstimate siegel = arclab::density_siegel(cfg);
  const arclab::J1Result j1 = arclab::eval_J1(cfg);
  emit(json{{"J1", fourier.J1},
            {"chi_infinity", siegel.chi_infinity},
            {"routes", json{{"J1", fourier.route},
                            {"chi_infinity", siegel.route}}},
            {"error_bars", json{{"J1", fourier.error_bar},
                                {"chi_infinity", siegel.error_bar}}},
            {"radii_used", json{{"outer", j1.radius_used},
                                {"inner", cfg.inner_radius}}},
            {"seed", cfg.mc_seed}});
  return 0;
}

int cmd_kernel_check(double eta) {
  json devs = json::array();
  double max_dev = 0.0;
  for (double gamma : {0.0, eta / 2.0, 2.0 * eta}) {
    const double dev = arclab::kernel_fourier_check(eta, gamma);
    devs.push_back(json{{"gamma", gamma}, {"deviation", dev}});
    max_dev = std::max(max_dev, dev);
  }
  bool domination_ok = true;
  for (int i = 0; i <= 1000; ++i) {
    const double gamma = -1.0 + 2.0 * i / 1000.0;
    const double indicator = std::abs(gamma) <= eta ? 1.0 : 0.0;
    const double wm = arclab::kernel_W_minus(eta, gamma);
    const double wp = arclab::kernel_W_plus(eta, gamma);
    if (wm > indicator + 1e-12 || wp < indicator - 1e-12) {
      domination_ok = false;
      break;
    }
  }
  emit(json{{"eta", eta},
            {"fourier_devs", devs},
            {"max_fourier_dev", max_dev},
            {"domination_ok", domination_ok}});
  return 0;
}

int cmd_arcs(long B, double delta, const std::string& report) {
  const arclab::CountBound bound(B);
  const arclab::RepCounts r6 = arclab::count_r6(bound);
  const arclab::RepCounts r4 = arclab::count_r4(bound);
  const arclab::ArcSet arcs =
      arclab::build_major_arcs(static_cast<double>(B), delta);
  if (report == "per-n") {
    const std::vector<double> umaj =
        arclab::u_major_all(r6, arcs, r4.n_min, r4.n_max());
    std::cout << "n,u_major,u_minor,v_n\n";
    char buf[64];
    for (std::size_t i = 0; i < r4.counts.size(); ++i) {
      const std::int64_t n = r4.n_min + static_cast<std::int64_t>(i);
      std::snprintf(buf, sizeof buf, "%.12g", umaj[i]);
      std::cout << n << ',' << buf << ',';
      std::snprintf(buf, sizeof buf, "%.12g",
                    static_cast<double>(r6.at(n)) - umaj[i]);
      std::cout << buf << ',' << r4.counts[i] << '\n';
    }
    return 0;
  }
  const arclab::SplitResult split = arclab::N_split(r6, r4, arcs);
  const double twoB = 2.0 * static_cast<double>(B);
  emit(json{{"N", split.N_exact},
            {"N_major", split.N_major},
            {"N_minor", split.N_minor},
            {"ratio_minor_to_45",
             split.N_minor / (45.0 * std::pow(twoB, 5.0))}});
  return 0;
}

int cmd_verify(const arclab::VerifyOptions& opt) {
  const arclab::VerifyResult result = arclab::run_verify(opt);
  std::cout << "wrote " << result.json_path << " and " << result.csv_path
            << "; hard failures: " << result.hard_failures << "\n";
  return result.hard_failures;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for a ten-variable cubic-linear system"};
  app.require_subcommand(1);

  auto* count = app.add_subcommand("count", "lattice counts over [-B,B]");
  long count_B = 1;
  std::string count_mode = "N", count_csv;
  count->add_option("--B", count_B, "box half-width")->required();
  count->add_option("--mode", count_mode, "what to count")
      ->check(CLI::IsMember({"N", "r4", "r6", "spaces-union", "oracle"}));
  count->add_option("--csv", count_csv, "CSV dump path (r4/r6 modes)");

  auto* series = app.add_subcommand("series", "partial singular series");
  long series_Q = 32, series_hua = 0;
  series->add_option("--Q", series_Q, "modulus bound")->required();
  series->add_option("--hua-qmax", series_hua,
                     "also sweep the normalized sup |S|/q^(2/3) up to here");

  auto* chip = app.add_subcommand("chip", "one local density chi_p");
  long chip_p = 2, chip_H = 8;
  bool chip_terms = false;
  chip->add_option("--p", chip_p, "prime")->required();
  chip->add_option("--H", chip_H, "prime-power depth")->required();
  chip->add_flag("--terms", chip_terms, "include per-power coefficients");

  auto* euler = app.add_subcommand("euler", "Euler product over p <= P");
  long euler_P = 100, euler_H = 8;
  euler->add_option("--P", euler_P, "prime bound")->required();
  euler->add_option("--H", euler_H, "prime-power depth")->required();

  auto* mp = app.add_subcommand("mp", "solution count modulo p^h");
  long mp_p = 2, mp_h = 1;
  // the spelled-out flag is --h, so this subcommand keeps only --help
  mp->set_help_flag("--help", "print help");
  mp->add_option("--p", mp_p, "prime")->required();
  mp->add_option("--h", mp_h, "exponent")->required();

  auto* singint = app.add_subcommand("singint", "singular integral routes");
  std::string singint_config;
  singint->add_option("--config", singint_config,
                      "key = value file mirroring the quadrature config");

  auto* kernel = app.add_subcommand("kernel-check", "smoothing kernel pair");
  double kernel_eta = 0.1;
  kernel->add_option("--eta", kernel_eta, "kernel width")->required();

  auto* arcs_cmd = app.add_subcommand("arcs", "major/minor arc split");
  long arcs_B = 20;
  double arcs_delta = 1.0 / 9.0;
  std::string arcs_report = "aggregate";
  arcs_cmd->add_option("--B", arcs_B, "box half-width")->required();
  arcs_cmd->add_option("--delta", arcs_delta, "arc exponent");
  arcs_cmd->add_option("--report", arcs_report, "output shape")
      ->check(CLI::IsMember({"per-n", "aggregate"}));

  auto* verify = app.add_subcommand("verify", "full report");
  arclab::VerifyOptions vopt;
  verify->add_option("--B", vopt.Bs, "box sweep")->delimiter(',');
  verify->add_option("--primes", vopt.primes, "Euler prime bound");
  verify->add_option("--depth", vopt.depth, "prime-power modulus cap");
  verify->add_option("--seed", vopt.seed, "master seed");
  verify->add_option("--delta", vopt.delta, "arc exponent");
  verify->add_option("--out", vopt.out, "report path");
  std::string verify_config;
  verify->add_option("--config", verify_config, "quadrature config file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (count->parsed()) return cmd_count(count_B, count_mode, count_csv);
    if (series->parsed()) return cmd_series(series_Q, series_hua);
    if (chip->parsed()) return cmd_chip(chip_p, chip_H, chip_terms);
    if (euler->parsed()) return cmd_euler(euler_P, euler_H);
    if (mp->parsed()) return cmd_mp(mp_p, mp_h);
    if (singint->parsed()) return cmd_singint(singint_config);
    if (kernel->parsed()) return cmd_kernel_check(kernel_eta);
    if (arcs_cmd->parsed()) return cmd_arcs(arcs_B, arcs_delta, arcs_report);
    if (verify->parsed()) {
      if (!verify_config.empty())
        vopt.quad = parse_quad_config(verify_config);
      return cmd_verify(vopt);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
