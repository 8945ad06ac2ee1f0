// Copyright 2026 The lpclt Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Acceptance checks, one PASS/FAIL line per criterion.
//
//   lpclt_acceptance                 run every criterion
//   lpclt_acceptance --criterion N   run criterion N only

#include <sys/wait.h>

#include <gmpxx.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "lpclt/bounds.hpp"
#include "lpclt/commands.hpp"
#include "lpclt/config.hpp"
#include "lpclt/discretize.hpp"
#include "lpclt/fieldgen.hpp"
#include "lpclt/montecarlo.hpp"
#include "lpclt/verify.hpp"

namespace {

namespace b = lpclt::bounds;
namespace fs = std::filesystem;
using lpclt::cli::Json;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "FAILED ") + what;
    pass = pass && ok;
  }
};

std::string num(double x, int digits = 10) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

lpclt::cli::RunConfig load(const std::string& name, const std::string& command) {
  std::ifstream in(std::string(LPCLT_CONFIG_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing config " + name);
  return lpclt::cli::parse_config(Json::parse(in), command);
}

mpz_class utev_oracle(int s) {
  mpz_class ratio = 1;
  for (int k = s / 2 + 1; k <= s; ++k) ratio *= k;
  mpz_class pow3;
  mpz_ui_pow_ui(pow3.get_mpz_t(), 3, static_cast<unsigned long>(s));
  return mpz_class(4) * (3 + 2 * s) * (s - 1) * pow3 * ratio * ratio;
}

Outcome criterion_1() {
  Outcome o;
  const char* expected[] = {"1008", "1539648", "3149280000"};
  for (int i = 0; i < 3; ++i) {
    const int s = 2 * (i + 1);
    const std::string got = b::utev_a(s).decimal();
    o.require(got == expected[i] && got == utev_oracle(s).get_str(), "a_" + std::to_string(s) + " = " + got);
  }
  const double ku = b::ku_constant();
  o.require(std::fabs(ku - 4.760327) <= 5e-7,
            "K_U = " + num(ku, 12) + " vs 4.760327 (|diff| = " + num(std::fabs(ku - 4.760327), 3) + ", tol 5e-7)");
  return o;
}

Outcome criterion_2() {
  Outcome o;
  for (int s : {2, 4, 6, 8}) {
    const auto c = b::ku_check(s);
    o.require(!c.holds, "s=" + std::to_string(s) + " fails (" + num(c.lhs, 5) + " > " + num(c.rhs, 5) + ")");
  }
  bool all = true;
  for (int s = 10; s <= 64; s += 2) all = all && b::ku_check(s).holds;
  o.require(all, "holds for every even s in [10, 64]");
  const auto cross = b::ku_crossover_order();
  o.require(cross && *cross == 10, "crossover order " + (cross ? std::to_string(*cross) : std::string("none")));
  return o;
}

Outcome criterion_3() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (auto [s, v] : {std::pair{2, 4.0}, {4, 8.0}, {6, 12.0}}) {
    const double a = static_cast<double>(b::utev_a(s).value);
    const double closed = std::pow(a * std::pow(0.25, 1.0 - s / v), 1.0 / s);
    worst = std::max(worst, std::fabs(b::z_value(lpclt::MixingProfile::iid(), s, v).value / closed - 1.0));
  }
  o.require(worst < 1e-12, "iid closed form max rel err " + num(worst, 3));
  double worst_doubling = 0.0;
  for (double rho : {0.1, 0.3, 0.5, 0.7, 0.9, 0.99}) {
    lpclt::MixingProfile p(lpclt::MixingKind::kAlpha, lpclt::GeometricDecay{1.0, rho});
    for (auto [s, v] : {std::pair{2, 4.0}, {4, 8.0}, {6, 12.0}}) {
      const auto z = b::z_value(p, s, v);
      const double doubled = b::z_value_truncated(p, s, v, 2 * z.truncation_terms);
      worst_doubling = std::max(worst_doubling, std::fabs(doubled / z.value - 1.0));
    }
  }
  o.require(worst_doubling < 1e-10, "geometric doubling max rel change " + num(worst_doubling, 3));
  const double secs = seconds_since(t0);
  o.require(secs < 1.0, "runtime " + num(secs, 3) + " s");
  return o;
}

Outcome criterion_4() {
  Outcome o;
  const double exact = 1.0 / std::sqrt(3.0);
  auto err = [&](std::size_t n) {
    const auto g = lpclt::GridSpace::uniform(n);
    std::vector<double> f(g.points().begin(), g.points().end());
    return std::fabs(lpclt::lp_norm(f, 2.0, g) - exact);
  };
  const double e1024 = err(1024), e2048 = err(2048), e16384 = err(16384);
  o.require(e1024 <= 1e-4, "err(1024) = " + num(e1024, 3));
  o.require(e16384 <= 1e-6, "err(16384) = " + num(e16384, 3));
  const double ratio = e1024 / e2048;
  o.require(std::fabs(ratio - 4.0) < 0.1, "doubling ratio " + num(ratio, 5) + " (order 2)");
  return o;
}

Outcome criterion_5() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto g = lpclt::GridSpace::uniform(16);
  const auto spec = lpclt::FieldSpec::named({lpclt::BasisFamily::kConst, 1}, lpclt::DriverModel::iid_normal(1.0), g);
  const auto m2 = lpclt::estimate_moment(spec, 1024, 2.0, 2.0, g, 5000, 0);
  const auto m4 = lpclt::estimate_moment(spec, 1024, 4.0, 2.0, g, 5000, 0);
  o.require(m2.ci_low <= 1.0 && 1.0 <= m2.ci_high, "E S^2 in [" + num(m2.ci_low, 5) + ", " + num(m2.ci_high, 5) + "]");
  o.require(m4.ci_low <= 3.0 && 3.0 <= m4.ci_high, "E S^4 in [" + num(m4.ci_low, 5) + ", " + num(m4.ci_high, 5) + "]");
  const double secs = seconds_since(t0);
  o.require(secs < 30.0, "runtime " + num(secs, 3) + " s");
  return o;
}

Outcome criterion_6() {
  Outcome o;
  const auto g = lpclt::GridSpace::uniform(16);
  const auto spec =
      lpclt::FieldSpec::named({lpclt::BasisFamily::kConst, 1}, lpclt::DriverModel::ar1_unit_variance(0.5), g);
  const auto cov = lpclt::empirical_cov(spec, 4096, g, 4000, 0);
  std::size_t covered = 0;
  double lo = INFINITY, hi = -INFINITY;
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) {
      const double half = lpclt::kZ99 * cov.se(i, j);
      if (std::fabs(cov.at(i, j) - 3.0) <= half) ++covered;
      lo = std::min(lo, cov.at(i, j) - half);
      hi = std::max(hi, cov.at(i, j) + half);
    }
  }
  o.require(covered == g.size() * g.size(), std::to_string(covered) + "/" + std::to_string(g.size() * g.size()) +
                                                " entries cover 3 (99% CI range [" + num(lo, 5) + ", " + num(hi, 5) + "])");
  return o;
}

Outcome criterion_7() {
  Outcome o;
  for (const char* driver : {"iid", "ma1", "ma2", "ar1_rho03", "ar1_rho06"}) {
    for (const char* sv : {"s2v4", "s4v8"}) {
      const std::string name = std::string("bounds_") + driver + "_" + sv + ".json";
      const auto r = lpclt::cli::run_command(load(name, "verify-bounds"));
      const Json& v = r.result["verdict"];
      const std::string status = v["status"];
      o.require(status == "satisfied",
                name + " " + status + " (" + num(v["empirical"]["ci_high"].get<double>(), 4) + " <= " +
                    (v["theoretical"].is_number() ? num(v["theoretical"].get<double>(), 4) : std::string("inf")) + ")");
    }
  }
  return o;
}

Outcome criterion_8() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  struct Case {
    const char* config;
    int seeds;
    int min_pass;
    bool trend;
  };
  const Case cases[] = {{"clt_gaussian.json", 100, 96, false},
                        {"clt_rademacher_fourier.json", 40, 38, true},
                        {"clt_ma1_fourier.json", 40, 38, false}};
  for (const auto& c : cases) {
    auto cfg = load(c.config, "verify-clt");
    const auto grid = lpclt::cli::parse_grid(cfg.grid);
    const auto spec = lpclt::cli::build_field(*cfg.field, grid);
    std::vector<std::size_t> schedule = c.trend ? std::vector<std::size_t>{16, 1024} : std::vector<std::size_t>{1024};
    int passed = 0, shrank = 0;
    for (int seed = 1; seed <= c.seeds; ++seed) {
      const auto r = lpclt::verify_clt(spec, schedule, 2.0, grid, 2000, 0.01, static_cast<std::uint64_t>(seed));
      if (r.verdicts.back().reps_limit != 8000) throw std::runtime_error("limit sample size");
      passed += r.pass_at_largest;
      if (c.trend) shrank += r.verdicts.back().ks_stat < r.verdicts.front().ks_stat;
    }
    o.require(passed >= c.min_pass, std::string(c.config) + " " + std::to_string(passed) + "/" +
                                        std::to_string(c.seeds) + " pass at n=1024");
    if (c.trend) {
      o.require(shrank * 10 >= c.seeds * 9, "KS(1024) < KS(16) on " + std::to_string(shrank) + "/" +
                                                std::to_string(c.seeds) + " seeds");
    }
  }
  const double secs = seconds_since(t0);
  o.require(secs < 300.0, "runtime " + num(secs, 3) + " s");
  return o;
}

Outcome criterion_9() {
  Outcome o;
  lpclt::MixingProfile half(lpclt::MixingKind::kBeta, lpclt::GeometricDecay{1.0, 0.5});
  const double kn = b::nachapetyan_k(half, 2.0);
  o.require(kn == 4.0, "K_N(2^-k, s=2) = " + num(kn, 17));
  for (const char* name : {"superstrong_ma1.json", "superstrong_ma2.json", "superstrong_iid_geometric.json"}) {
    const auto r = lpclt::cli::run_command(load(name, "verify-superstrong"));
    const std::string status = r.result["verdict"]["status"];
    o.require(status == "satisfied", std::string(name) + " " + status);
  }
  const auto r = lpclt::cli::run_command(load("superstrong_polynomial_vacuous.json", "verify-superstrong"));
  const std::string status = r.result["verdict"]["status"];
  o.require(status == "vacuous", "superstrong_polynomial_vacuous.json " + status);
  return o;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(LPCLT_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string without_timestamp(const fs::path& report) {
  std::ifstream in(report);
  Json j = Json::parse(in);
  j.erase("timestamp");
  return j.dump();
}

// Largest relative difference between numeric leaves of two documents;
// infinite when their structure differs.
double max_relative_diff(const Json& a, const Json& b) {
  if (a.type() != b.type() && !(a.is_number() && b.is_number())) return INFINITY;
  if (a.is_number()) {
    const double x = a.get<double>(), y = b.get<double>();
    if (x == y) return 0.0;
    return std::fabs(x - y) / std::max(std::fabs(x), std::fabs(y));
  }
  if (a.is_object() || a.is_array()) {
    if (a.size() != b.size()) return INFINITY;
    double worst = 0.0;
    if (a.is_object()) {
      for (auto it = a.begin(); it != a.end(); ++it) {
        if (!b.contains(it.key())) return INFINITY;
        worst = std::max(worst, max_relative_diff(it.value(), b[it.key()]));
      }
    } else {
      for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, max_relative_diff(a[i], b[i]));
    }
    return worst;
  }
  return a == b ? 0.0 : INFINITY;
}

Outcome criterion_10() {
  Outcome o;
  const fs::path dir = fs::temp_directory_path() / "lpclt_acceptance_determinism";
  fs::create_directories(dir);
  struct Run {
    const char* command;
    const char* config;
    const char* extra;
  };
  const Run runs[] = {{"verify-clt", "clt_ma1_fourier.json", ""},
                      {"verify-bounds", "bounds_ar1_rho06_s4v8.json", "--reps 300"},
                      {"verify-superstrong", "superstrong_ma2.json", "--reps 300"}};
  for (const auto& r : runs) {
    std::string reports[4];
    Json parsed[4];
    for (int i = 0; i < 4; ++i) {
      const fs::path out = dir / (std::string(r.command) + "_" + std::to_string(i) + ".json");
      const std::string threads = i < 2 ? "" : " --threads 4";
      const int code = run_cli(std::string(r.command) + " --config " + LPCLT_CONFIG_DIR + "/" + r.config + " " +
                               r.extra + threads + " --out " + out.string());
      if (code != 0) {
        o.require(false, std::string(r.command) + " exited " + std::to_string(code));
        break;
      }
      reports[i] = without_timestamp(out);
      parsed[i] = Json::parse(reports[i]);
    }
    o.require(!reports[0].empty() && reports[0] == reports[1], std::string(r.command) + " serial byte-identical");
    o.require(!reports[2].empty() && reports[2] == reports[3], std::string(r.command) + " --threads 4 byte-identical");
    const double diff = max_relative_diff(parsed[0], parsed[2]);
    o.require(diff <= 1e-12, std::string(r.command) + " serial vs threads max rel diff " + num(diff, 3));
  }
  fs::remove_all(dir);
  return o;
}

const std::vector<std::pair<const char*, std::function<Outcome()>>>& criteria() {
  static const std::vector<std::pair<const char*, std::function<Outcome()>>> list{
      {"exact constants", criterion_1},
      {"K_U inequality audit", criterion_2},
      {"series engine", criterion_3},
      {"quadrature", criterion_4},
      {"moment sanity", criterion_5},
      {"long-run covariance", criterion_6},
      {"moment bound on shipped configs", criterion_7},
      {"CLT verification", criterion_8},
      {"superstrong path", criterion_9},
      {"determinism", criterion_10},
  };
  return list;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: lpclt_acceptance [--criterion N]\n";
      return 2;
    }
  }
  if (only < 0 || only > static_cast<int>(criteria().size())) {
    std::cerr << "criterion must be 1.." << criteria().size() << '\n';
    return 2;
  }
  bool all_pass = true;
  for (std::size_t i = 0; i < criteria().size(); ++i) {
    if (only != 0 && static_cast<int>(i + 1) != only) continue;
    const auto& [title, check] = criteria()[i];
    Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    std::cout << (outcome.pass ? "PASS" : "FAIL") << "  criterion " << (i + 1) << " (" << title
              << "): " << outcome.detail << std::endl;
    all_pass = all_pass && outcome.pass;
  }
  return all_pass ? 0 : 1;
}
