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


#include "lpclt/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "lpclt/bounds.hpp"
#include "lpclt/error.hpp"
#include "lpclt/fieldgen.hpp"
#include "lpclt/montecarlo.hpp"
#include "lpclt/simd/kernels.hpp"
#include "lpclt/verify.hpp"

namespace lpclt::cli {
namespace {

constexpr const char* kSupNote =
    "sup over n is approximated by the maximum over the n schedule, an under-approximation";
constexpr const char* kCltNote =
    "norm-distribution and projection tests are necessary conditions for weak convergence only";

std::string fmt(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string fmt_ci(const MomentEstimate& e) {
  return fmt(e.value) + "  [" + fmt(e.ci_low) + ", " + fmt(e.ci_high) + "]";
}

Json moment_json(const MomentEstimate& e) {
  return Json{{"n", e.n},
              {"s", e.s},
              {"p", e.p},
              {"reps", e.reps},
              {"value", json_number(e.value)},
              {"ci_low", json_number(e.ci_low)},
              {"ci_high", json_number(e.ci_high)},
              {"std_error", json_number(e.std_error)},
              {"kurtosis", json_number(e.kurtosis)},
              {"heavy_tailed", e.heavy_tailed}};
}

GridSpace grid_of(const RunConfig& cfg) { return parse_grid(cfg.grid); }

FieldSpec require_field(const RunConfig& cfg, const GridSpace& grid) {
  if (!cfg.field) throw Error(ErrorCode::kConfig, cfg.command + " requires a \"field\"");
  return build_field(*cfg.field, grid);
}

// Alpha profile: explicit config value, else the one certified for the
// field's driver, else iid.
MixingProfile alpha_profile(const RunConfig& cfg) {
  if (cfg.profile) return parse_profile(*cfg.profile, MixingKind::kAlpha);
  if (cfg.field) return profile_for_driver(parse_driver(cfg.field->driver));
  return MixingProfile::iid();
}

bounds::EvenOrderLift lift_order(const RunConfig& cfg, const GridSpace& grid,
                                 CommandResult& out) {
  bounds::EvenOrderLift lift = bounds::effective_even_order(cfg.s, grid.is_unit_mass());
  if (!lift.warning.empty()) out.notes.push_back(lift.warning);
  if (static_cast<double>(lift.order) != cfg.s) {
    out.notes.push_back("order s = " + fmt(cfg.s) + " lifted to the even order " +
                        std::to_string(lift.order));
  }
  return lift;
}

double resolve_v(const RunConfig& cfg, int order) {
  double v = cfg.v ? *cfg.v : 2.0 * order;
  if (!(v > order)) {
    throw Error(ErrorCode::kConfig, "v = " + fmt(v) + " must exceed the moment order " +
                                        std::to_string(order));
  }
  return v;
}

void tail_into(const bounds::TailReport& tail, CommandResult& out) {
  out.result["tail"] = Json{{"s", tail.s},
                            {"w", json_number(tail.w_value)},
                            {"y_grid", tail.y_grid},
                            {"q_bound", tail.q_bound}};
  for (std::size_t j = 0; j < tail.y_grid.size(); ++j) {
    out.table.emplace_back("Q(" + fmt(tail.y_grid[j]) + ") <=", fmt(tail.q_bound[j]));
  }
}

Json verdict_json(const BoundVerdict& v) {
  Json per_n = Json::array();
  for (const auto& e : v.per_n) per_n.push_back(moment_json(e));
  return Json{{"status", bound_status_name(v.status())},
              {"satisfied", v.satisfied},
              {"vacuous", v.vacuous},
              {"empirical", moment_json(v.empirical)},
              {"empirical_is_schedule_max", true},
              {"theoretical", json_number(v.theoretical)},
              {"slack", json_number(v.slack)},
              {"constant", json_number(v.constant)},
              {"norm_integral", json_number(v.norm_integral)},
              {"per_n", per_n}};
}

void verdict_table(const BoundVerdict& v, CommandResult& out) {
  for (const auto& e : v.per_n) out.table.emplace_back("E||S_n||^s  n=" + std::to_string(e.n), fmt_ci(e));
  out.table.emplace_back("empirical (max over n)", fmt_ci(v.empirical));
  out.table.emplace_back("theoretical", fmt(v.theoretical));
  out.table.emplace_back("slack", fmt(v.slack));
  out.table.emplace_back("verdict", std::string(bound_status_name(v.status())));
}

CommandResult cmd_bounds(const RunConfig& cfg) {
  CommandResult out;
  const GridSpace grid = grid_of(cfg);
  const auto lift = lift_order(cfg, grid, out);
  const int s = lift.order;
  const double v = resolve_v(cfg, s);
  const MixingProfile profile = alpha_profile(cfg);

  const auto a = bounds::utev_a(s);
  const auto ku = bounds::ku_check(s);
  const auto crossover = bounds::ku_crossover_order();
  const auto z = bounds::z_value(profile, s, v, cfg.tol);

  out.result["s_requested"] = cfg.s;
  out.result["s_effective"] = s;
  out.result["v"] = v;
  out.result["profile"] = profile.description();
  out.result["utev"] = Json{{"a_s", a.decimal()}, {"root", a.root}};
  out.result["ku"] = Json{{"constant", bounds::ku_constant()},
                          {"printed_value", bounds::kKuPrintedValue},
                          {"lhs", ku.lhs},
                          {"rhs", ku.rhs},
                          {"holds", ku.holds},
                          {"crossover_order", crossover ? Json(*crossover) : Json(nullptr)}};
  out.result["z"] = Json{{"value", json_number(z.value)},
                         {"finite", z.finite()},
                         {"truncation_terms", z.truncation_terms},
                         {"truncation_remainder", json_number(z.truncation_remainder)}};

  out.table.emplace_back("s (effective)", std::to_string(s));
  out.table.emplace_back("v", fmt(v));
  out.table.emplace_back("profile", profile.description());
  out.table.emplace_back("a_s", a.decimal());
  out.table.emplace_back("a_s^(1/s)", fmt(a.root));
  out.table.emplace_back("K_U", fmt(bounds::ku_constant()));
  out.table.emplace_back("a_s^(1/s) <= K_U s", ku.holds ? "holds" : "fails (" + fmt(ku.lhs) + " > " + fmt(ku.rhs) + ")");
  out.table.emplace_back("K_U crossover order", crossover ? std::to_string(*crossover) : "none");
  out.table.emplace_back("Z[alpha](s,v)", z.finite() ? fmt(z.value) : "bound unavailable (series diverges)");

  std::optional<double> w = cfg.w;
  if (cfg.field) {
    const FieldSpec spec = build_field(*cfg.field, grid);
    const double integral = sup_v_norm(spec, grid, v).value;
    const double y = std::pow(integral, 1.0 / v);
    const double moment = bounds::lp_moment_bound(profile, s, v, integral, cfg.tol);
    const std::vector<double> v_grid = cfg.v_grid ? *cfg.v_grid : bounds::default_v_grid(s);
    const auto opt = bounds::optimize_over_v(
        profile, s, v_grid, [&](double vv) { return std::pow(sup_v_norm(spec, grid, vv).value, 1.0 / vv); },
        cfg.tol);
    out.result["field"] = spec.label();
    out.result["norm_integral"] = json_number(integral);
    out.result["y"] = json_number(y);
    out.result["normed_sum_bound"] = json_number(bounds::normed_sum_bound(y, z.value));
    out.result["w"] = json_number(moment);
    out.result["v_optimum"] = Json{{"v_grid", v_grid},
                                   {"v_star", opt.v_star ? Json(*opt.v_star) : Json(nullptr)},
                                   {"bound", json_number(opt.bound)}};
    out.table.emplace_back("sup_i E||xi_i||_v^v", fmt(integral));
    out.table.emplace_back("W = sup_n E||S_n||_s^s bound", fmt(moment));
    out.table.emplace_back("best v on grid", opt.v_star ? fmt(*opt.v_star) : "none");
    if (!w) w = moment;
  }
  if (cfg.beta_profile) {
    const MixingProfile beta = parse_profile(*cfg.beta_profile, MixingKind::kBeta);
    const auto series = bounds::beta_series(beta, cfg.s, cfg.tol);
    const double kn = bounds::nachapetyan_k(beta, cfg.s, cfg.tol);
    out.result["nachapetyan"] = Json{{"profile", beta.description()},
                                     {"s", cfg.s},
                                     {"series", json_number(series.converges ? series.sum : std::numeric_limits<double>::infinity())},
                                     {"k_n", json_number(kn)}};
    out.table.emplace_back("K_N[beta](s)", std::isfinite(kn) ? fmt(kn) : "bound unavailable (series diverges)");
  }
  if (w) tail_into(bounds::chebyshev_tail(*w, s, cfg.y_grid), out);
  return out;
}

CommandResult cmd_tail(const RunConfig& cfg) {
  CommandResult out;
  bounds::TailReport tail;
  if (cfg.w) {
    tail = bounds::chebyshev_tail(*cfg.w, cfg.s, cfg.y_grid);
  } else {
    const GridSpace grid = grid_of(cfg);
    const FieldSpec spec = require_field(cfg, grid);
    const int s = lift_order(cfg, grid, out).order;
    tail = tail_report(spec, alpha_profile(cfg), s, resolve_v(cfg, s), grid, cfg.y_grid, cfg.tol);
  }
  out.table.emplace_back("W", fmt(tail.w_value));
  out.table.emplace_back("s", fmt(tail.s));
  tail_into(tail, out);
  return out;
}

CommandResult cmd_simulate(const RunConfig& cfg, Parallelism par) {
  CommandResult out;
  const GridSpace grid = grid_of(cfg);
  const FieldSpec spec = require_field(cfg, grid);
  const double p = cfg.p ? *cfg.p : cfg.s;
  const auto norms = sample_sn_norms(spec, cfg.n, p, grid, cfg.reps, cfg.seed, par);
  const MomentEstimate e = summarize_moment(norms, cfg.s, p, cfg.n);
  out.result["field"] = spec.label();
  out.result["estimate"] = moment_json(e);
  if (e.heavy_tailed) out.notes.push_back("heavy-tailed replications: kurtosis above 100, interval unreliable");
  out.table.emplace_back("field", spec.label());
  out.table.emplace_back("n", std::to_string(cfg.n));
  out.table.emplace_back("reps", std::to_string(cfg.reps));
  out.table.emplace_back("E||S_n||_p^s", fmt_ci(e));
  out.table.emplace_back("std error", fmt(e.std_error));
  if (cfg.samples_path) {
    out.samples.reserve(norms.size());
    for (std::size_t r = 0; r < norms.size(); ++r) out.samples.push_back({r, cfg.n, p, cfg.s, norms[r]});
  }
  return out;
}

CommandResult cmd_verify_clt(const RunConfig& cfg, Parallelism par) {
  CommandResult out;
  const GridSpace grid = grid_of(cfg);
  const FieldSpec spec = require_field(cfg, grid);
  const double p = cfg.p ? *cfg.p : 2.0;
  CltOptions options;
  options.limit_factor = cfg.limit_factor;
  options.par = par;
  if (cfg.field->limit_lambda) options.lambda_override = *cfg.field->limit_lambda;
  const CltReport report = verify_clt(spec, cfg.n_schedule, p, grid, cfg.reps, cfg.significance, cfg.seed, options);

  Json verdicts = Json::array();
  for (const auto& v : report.verdicts) {
    verdicts.push_back(Json{{"n", v.n},
                            {"p", v.p},
                            {"ks_stat", v.ks_stat},
                            {"p_value", v.p_value},
                            {"reps_finite", v.reps_finite},
                            {"reps_limit", v.reps_limit},
                            {"pass", v.pass}});
    out.table.emplace_back("n=" + std::to_string(v.n),
                           "KS " + fmt(v.ks_stat) + "  p " + fmt(v.p_value) + (v.pass ? "  pass" : "  REJECT"));
  }
  out.result["field"] = spec.label();
  out.result["verdicts"] = verdicts;
  out.result["significance"] = report.significance;
  out.result["noise_scale"] = report.noise_scale;
  out.result["max_increase"] = report.max_increase;
  out.result["pass_at_largest"] = report.pass_at_largest;
  out.result["trend_ok"] = report.trend_ok;
  out.result["converged"] = report.converged;
  out.result["limit"] = Json{{"relative_jitter", report.limit_relative_jitter},
                             {"pivoted", report.limit_pivoted},
                             {"lambda_override", cfg.field->limit_lambda.has_value()}};
  out.notes.push_back(kCltNote);
  out.notes.push_back("no multiplicity correction across the n schedule");
  if (!report.trend_ok) out.notes.push_back("KS statistic increased by more than twice the noise scale along the schedule");
  out.table.emplace_back("trend", report.trend_ok ? "nonincreasing up to noise" : "increasing");
  out.table.emplace_back("verdict", report.pass_at_largest ? "pass" : "fail");
  out.exit_code = report.pass_at_largest ? kExitPass : kExitFail;
  return out;
}

CommandResult cmd_verify_bounds(const RunConfig& cfg, Parallelism par) {
  CommandResult out;
  const GridSpace grid = grid_of(cfg);
  const FieldSpec spec = require_field(cfg, grid);
  const int s = lift_order(cfg, grid, out).order;
  const double v = resolve_v(cfg, s);
  const MixingProfile profile = alpha_profile(cfg);
  const BoundVerdict verdict =
      verify_moment_bound(spec, profile, s, v, cfg.n_schedule, grid, cfg.reps, cfg.seed, par, cfg.tol);
  out.result["field"] = spec.label();
  out.result["profile"] = profile.description();
  out.result["s"] = s;
  out.result["v"] = v;
  out.result["verdict"] = verdict_json(verdict);
  out.notes.push_back(kSupNote);
  out.table.emplace_back("field", spec.label());
  out.table.emplace_back("profile", profile.description());
  out.table.emplace_back("Z[alpha](s,v)", fmt(verdict.constant));
  verdict_table(verdict, out);
  out.exit_code = verdict.status() == BoundStatus::kViolated ? kExitFail : kExitPass;
  return out;
}

CommandResult cmd_verify_superstrong(const RunConfig& cfg, Parallelism par) {
  CommandResult out;
  if (!cfg.beta_profile) throw Error(ErrorCode::kConfig, "verify-superstrong requires \"beta_profile\"");
  const GridSpace grid = grid_of(cfg);
  const FieldSpec spec = require_field(cfg, grid);
  const MixingProfile beta = parse_profile(*cfg.beta_profile, MixingKind::kBeta);
  const BoundVerdict verdict =
      verify_superstrong(spec, beta, cfg.s, cfg.n_schedule, grid, cfg.reps, cfg.seed, par, cfg.tol);
  out.result["field"] = spec.label();
  out.result["beta_profile"] = beta.description();
  out.result["s"] = cfg.s;
  out.result["verdict"] = verdict_json(verdict);
  out.notes.push_back(kSupNote);
  out.table.emplace_back("field", spec.label());
  out.table.emplace_back("K_N[beta](s)", fmt(verdict.constant));
  verdict_table(verdict, out);
  out.exit_code = verdict.status() == BoundStatus::kViolated ? kExitFail : kExitPass;
  return out;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"bounds",        "simulate",           "verify-clt",
                                              "verify-bounds", "verify-superstrong", "tail"};
  return names;
}

Json json_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

std::string version_string() {
  return std::string("lpclt ") + LPCLT_VERSION_STRING + " (" + LPCLT_GIT_DESCRIBE + ")";
}

CommandResult run_command(const RunConfig& cfg, Parallelism par) {
  if (cfg.samples_path && cfg.command != "simulate") {
    throw Error(ErrorCode::kConfig, "output.samples is only produced by simulate");
  }
  CommandResult out;
  if (cfg.command == "bounds") {
    out = cmd_bounds(cfg);
  } else if (cfg.command == "tail") {
    out = cmd_tail(cfg);
  } else if (cfg.command == "simulate") {
    out = cmd_simulate(cfg, par);
  } else if (cfg.command == "verify-clt") {
    out = cmd_verify_clt(cfg, par);
  } else if (cfg.command == "verify-bounds") {
    out = cmd_verify_bounds(cfg, par);
  } else if (cfg.command == "verify-superstrong") {
    out = cmd_verify_superstrong(cfg, par);
  } else {
    throw Error(ErrorCode::kConfig, "unknown command \"" + cfg.command + "\"");
  }
  if (cfg.seed_defaulted) out.notes.insert(out.notes.begin(), "no seed given: default seed 0 used");
  return out;
}

Json make_report(const RunConfig& cfg, const CommandResult& result, double wall_seconds,
                 const std::string& utc) {
  const Json effective = effective_config(cfg);
  return Json{{"command", cfg.command},
              {"version", version_string()},
              {"simd", std::string(simd::isa_name(simd::active_isa()))},
              {"config", effective},
              {"config_hash", config_hash(effective)},
              {"seed", cfg.seed},
              {"seed_defaulted", cfg.seed_defaulted},
              {"status", result.exit_code == kExitPass ? "pass" : "fail"},
              {"exit_code", result.exit_code},
              {"result", result.result},
              {"notes", result.notes},
              {"timestamp", {{"utc", utc}, {"wall_seconds", wall_seconds}}}};
}

Json make_error_report(const std::string& command, const std::string& message,
                       const std::string& utc) {
  return Json{{"command", command},
              {"version", version_string()},
              {"status", "error"},
              {"exit_code", kExitUsage},
              {"error", message},
              {"timestamp", {{"utc", utc}}}};
}

std::string format_table(const std::vector<std::pair<std::string, std::string>>& rows) {
  std::size_t width = 0;
  for (const auto& [label, value] : rows) width = std::max(width, label.size());
  std::string text;
  for (const auto& [label, value] : rows) {
    text += label;
    text.append(width + 2 - label.size(), ' ');
    text += value;
    text += '\n';
  }
  return text;
}

void write_samples_csv(const std::string& path, const std::vector<SampleRecord>& samples) {
  std::ofstream csv(path);
  if (!csv) throw Error(ErrorCode::kConfig, "cannot write " + path);
  csv << "rep,n,p,s,norm_value\n";
  char buf[64];
  for (const auto& r : samples) {
    std::snprintf(buf, sizeof buf, "%.17g", r.norm_value);
    csv << r.rep << ',' << r.n << ',' << r.p << ',' << r.s << ',' << buf << '\n';
  }
}

}  // namespace lpclt::cli
