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


#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lpclt/commands.hpp"
#include "lpclt/config.hpp"
#include "lpclt/error.hpp"

namespace {

using lpclt::cli::Json;

struct Flags {
  std::string config_path;
  std::optional<double> s, v, p, significance, w, tol, scale_decay;
  std::optional<std::size_t> n, reps, limit_factor, grid;
  std::optional<std::uint64_t> seed;
  std::vector<std::size_t> n_schedule;
  std::vector<double> y_grid, v_grid;
  std::optional<std::string> profile, beta_profile, basis, driver, out, samples;
  unsigned threads = 1;
};

void add_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config_path, "JSON configuration file");
  cmd->add_option("--s", f.s, "moment order s");
  cmd->add_option("--v", f.v, "auxiliary order v > s");
  cmd->add_option("--p", f.p, "norm exponent p");
  cmd->add_option("--n", f.n, "sequence length (simulate)");
  cmd->add_option("--n-schedule", f.n_schedule, "sequence lengths for verify-*")->delimiter(',');
  cmd->add_option("--reps", f.reps, "Monte Carlo replications");
  cmd->add_option("--seed", f.seed, "master seed");
  cmd->add_option("--threads", f.threads, "worker threads (0 = auto)");
  cmd->add_option("--profile", f.profile, "alpha profile: iid, from_driver, geometric:<rho>, polynomial:<theta>, m_dependent:<m> or JSON");
  cmd->add_option("--beta-profile", f.beta_profile, "beta profile: geometric:<rho>, polynomial:<theta> or JSON");
  cmd->add_option("--basis", f.basis, "const, fourier(K), indicator(K), sine(K)");
  cmd->add_option("--driver", f.driver, "driver JSON, e.g. {\"ar1\":{\"rho\":0.5}}");
  cmd->add_option("--scale-decay", f.scale_decay, "non-stationary scaling 1 + c/i");
  cmd->add_option("--grid", f.grid, "uniform grid size");
  cmd->add_option("--significance", f.significance, "KS significance level");
  cmd->add_option("--tol", f.tol, "series tolerance");
  cmd->add_option("--limit-factor", f.limit_factor, "limit sample size multiple");
  cmd->add_option("--w", f.w, "tail functional W");
  cmd->add_option("--y", f.y_grid, "tail thresholds")->delimiter(',');
  cmd->add_option("--v-grid", f.v_grid, "v values for the bound optimiser")->delimiter(',');
  cmd->add_option("--out", f.out, "report path (default report.json)");
  cmd->add_option("--samples", f.samples, "per-replication CSV path (simulate)");
}

Json load_document(const Flags& f) {
  Json doc = Json::object();
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) throw lpclt::Error(lpclt::ErrorCode::kConfig, "cannot read " + f.config_path);
    try {
      doc = Json::parse(in);
    } catch (const Json::parse_error& e) {
      throw lpclt::Error(lpclt::ErrorCode::kConfig, f.config_path + ": " + e.what());
    }
    if (!doc.is_object()) throw lpclt::Error(lpclt::ErrorCode::kConfig, "config root must be an object");
  }
  auto set = [&](const char* key, const auto& value) {
    if (value) doc[key] = *value;
  };
  set("s", f.s);
  set("v", f.v);
  set("p", f.p);
  set("n", f.n);
  set("reps", f.reps);
  set("seed", f.seed);
  set("significance", f.significance);
  set("tol", f.tol);
  set("limit_factor", f.limit_factor);
  set("w", f.w);
  if (!f.n_schedule.empty()) doc["n_schedule"] = f.n_schedule;
  if (!f.y_grid.empty()) doc["y_grid"] = f.y_grid;
  if (!f.v_grid.empty()) doc["v_grid"] = f.v_grid;
  if (f.grid) doc["grid"] = Json{{"uniform", *f.grid}};
  if (f.profile) doc["profile"] = lpclt::cli::profile_from_text(*f.profile, lpclt::MixingKind::kAlpha);
  if (f.beta_profile) {
    doc["beta_profile"] = lpclt::cli::profile_from_text(*f.beta_profile, lpclt::MixingKind::kBeta);
  }
  if (f.basis || f.driver || f.scale_decay) {
    Json& field = doc["field"];
    if (field.is_null()) field = Json::object();
    if (f.basis) field["basis"] = *f.basis;
    if (f.scale_decay) field["scale_decay"] = *f.scale_decay;
    if (f.driver) {
      try {
        field["driver"] = Json::parse(*f.driver);
      } catch (const Json::parse_error& e) {
        throw lpclt::Error(lpclt::ErrorCode::kConfig, std::string("--driver: ") + e.what());
      }
    }
  }
  if (f.out || f.samples) {
    Json& output = doc["output"];
    if (output.is_null()) output = Json::object();
    if (f.out) output["report"] = *f.out;
    if (f.samples) output["samples"] = *f.samples;
  }
  return doc;
}

std::string utc_now() {
  std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

void write_report(const std::string& path, const Json& report) {
  std::ofstream out(path);
  if (!out) throw lpclt::Error(lpclt::ErrorCode::kConfig, "cannot write " + path);
  out << report.dump(2) << '\n';
}

int run(const std::string& command, const Flags& flags) {
  const auto start = std::chrono::steady_clock::now();
  std::string report_path = flags.out.value_or("report.json");
  lpclt::cli::RunConfig cfg;
  try {
    cfg = lpclt::cli::parse_config(load_document(flags), command);
    report_path = cfg.report_path;
    const auto result = lpclt::cli::run_command(cfg, lpclt::Parallelism{flags.threads});
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (cfg.samples_path) lpclt::cli::write_samples_csv(*cfg.samples_path, result.samples);
    write_report(report_path, lpclt::cli::make_report(cfg, result, wall, utc_now()));
    std::cout << command << "\n" << lpclt::cli::format_table(result.table);
    for (const auto& note : result.notes) std::cout << "note: " << note << '\n';
    return result.exit_code;
  } catch (const lpclt::Error& e) {
    std::cerr << "lpclt " << command << ": " << e.what() << '\n';
    try {
      write_report(report_path, lpclt::cli::make_error_report(command, e.what(), utc_now()));
    } catch (const lpclt::Error&) {
    }
    return lpclt::cli::kExitUsage;
  }
}

const std::map<std::string, std::string> kDescriptions{
    {"bounds", "Moment inequality constants and bounds for a mixing profile"},
    {"simulate", "Monte Carlo estimate of E||S_n||_p^s"},
    {"verify-clt", "KS comparison of ||S_n||_p against the Gaussian limit"},
    {"verify-bounds", "Check the moment bound against simulation over an n schedule"},
    {"verify-superstrong", "Check the beta-mixing moment bound against simulation"},
    {"tail", "Chebyshev tail bound P(||S_n||_p > y sqrt(n))"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moment bounds and CLT verification for mixing random fields in L^p"};
  app.set_version_flag("--version", lpclt::cli::version_string());
  app.require_subcommand(1);
  Flags flags;
  std::string chosen;
  for (const auto& name : lpclt::cli::command_names()) {
    CLI::App* cmd = app.add_subcommand(name, kDescriptions.at(name));
    add_flags(cmd, flags);
    cmd->callback([&chosen, name] { chosen = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return lpclt::cli::kExitUsage;
  }
  return run(chosen, flags);
}
