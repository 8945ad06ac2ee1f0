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


#include "lpclt/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <initializer_list>
#include <string_view>

#include "lpclt/error.hpp"
#include "lpclt/montecarlo.hpp"

namespace lpclt::cli {
namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::kConfig, where + ": " + what);
}

void check_keys(const Json& obj, std::initializer_list<std::string_view> allowed,
                const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      fail(where, "unknown key \"" + key + "\"");
    }
  }
}

double as_number(const Json& value, const std::string& where) {
  if (!value.is_number()) fail(where, "expected a number");
  double x = value.get<double>();
  if (!std::isfinite(x)) fail(where, "expected a finite number");
  return x;
}

std::uint64_t as_unsigned(const Json& value, const std::string& where) {
  if (value.is_number_unsigned()) return value.get<std::uint64_t>();
  if (value.is_number_integer()) {
    if (value.get<std::int64_t>() < 0) fail(where, "expected a non-negative integer");
    return static_cast<std::uint64_t>(value.get<std::int64_t>());
  }
  fail(where, "expected a non-negative integer");
}

std::vector<double> as_numbers(const Json& value, const std::string& where) {
  if (!value.is_array()) fail(where, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(value.size());
  for (std::size_t i = 0; i < value.size(); ++i) {
    out.push_back(as_number(value[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::string as_string(const Json& value, const std::string& where) {
  if (!value.is_string()) fail(where, "expected a string");
  return value.get<std::string>();
}

// Single-key object {"name": body}; returns the key.
std::string variant_key(const Json& obj, const std::string& where) {
  if (!obj.is_object() || obj.size() != 1) fail(where, "expected an object with exactly one key");
  return obj.begin().key();
}

Json decay_to_json(const Decay& decay) {
  if (const auto* e = std::get_if<ExplicitDecay>(&decay)) return Json{{"explicit", e->values}};
  if (const auto* g = std::get_if<GeometricDecay>(&decay)) {
    return Json{{"geometric", {{"c", g->c}, {"rho", g->rho}}}};
  }
  if (const auto* p = std::get_if<PolynomialDecay>(&decay)) {
    return Json{{"polynomial", {{"c", p->c}, {"theta", p->theta}}}};
  }
  return Json{{"m_dependent", {{"m", std::get<MDependentDecay>(decay).m}}}};
}

Json profile_to_json(const MixingProfile& profile) {
  return Json{{"kind", profile.kind() == MixingKind::kAlpha ? "alpha" : "beta"},
              {"decay", decay_to_json(profile.decay())}};
}

}  // namespace

DriverModel parse_driver(const Json& driver) {
  const std::string where = "field.driver";
  std::string key = variant_key(driver, where);
  const Json& body = driver.at(key);
  const std::string inner = where + "." + key;
  if (key == "iid_normal") {
    check_keys(body, {"sigma"}, inner);
    double sigma = body.contains("sigma") ? as_number(body["sigma"], inner + ".sigma") : 1.0;
    return DriverModel::iid_normal(sigma);
  }
  if (key == "iid_rademacher") {
    check_keys(body, {}, inner);
    return DriverModel::iid_rademacher();
  }
  if (key == "ma") {
    check_keys(body, {"weights", "sigma"}, inner);
    if (!body.contains("weights")) fail(inner, "missing \"weights\"");
    double sigma = body.contains("sigma") ? as_number(body["sigma"], inner + ".sigma") : 1.0;
    return DriverModel::moving_average(as_numbers(body["weights"], inner + ".weights"), sigma);
  }
  if (key == "ar1") {
    check_keys(body, {"rho", "sigma_innov"}, inner);
    if (!body.contains("rho")) fail(inner, "missing \"rho\"");
    double rho = as_number(body["rho"], inner + ".rho");
    if (body.contains("sigma_innov")) {
      return DriverModel::ar1(rho, as_number(body["sigma_innov"], inner + ".sigma_innov"));
    }
    return DriverModel::ar1_unit_variance(rho);
  }
  fail(where, "unknown driver \"" + key + "\" (iid_normal, iid_rademacher, ma, ar1)");
}

Json canonical_driver(const Json& driver) {
  DriverModel model = parse_driver(driver);
  const auto& kind = model.kind();
  if (const auto* d = std::get_if<IidNormal>(&kind)) return Json{{"iid_normal", {{"sigma", d->sigma}}}};
  if (std::holds_alternative<IidRademacher>(kind)) return Json{{"iid_rademacher", Json::object()}};
  if (const auto* d = std::get_if<MovingAverage>(&kind)) {
    return Json{{"ma", {{"weights", d->weights}, {"sigma", d->sigma}}}};
  }
  const auto& a = std::get<Ar1>(kind);
  return Json{{"ar1", {{"rho", a.rho}, {"sigma_innov", a.sigma_innov}}}};
}

MixingProfile parse_profile(const Json& profile, MixingKind expected) {
  const std::string where = expected == MixingKind::kAlpha ? "profile" : "beta_profile";
  if (profile.is_string()) {
    if (profile.get<std::string>() == "iid" && expected == MixingKind::kAlpha) {
      return MixingProfile::iid();
    }
    fail(where, "unknown profile shorthand \"" + profile.get<std::string>() + "\"");
  }
  check_keys(profile, {"kind", "decay", "description"}, where);
  if (!profile.contains("kind") || !profile.contains("decay")) {
    fail(where, "requires \"kind\" and \"decay\"");
  }
  std::string kind_name = as_string(profile["kind"], where + ".kind");
  MixingKind kind;
  if (kind_name == "alpha") {
    kind = MixingKind::kAlpha;
  } else if (kind_name == "beta") {
    kind = MixingKind::kBeta;
  } else {
    fail(where + ".kind", "expected \"alpha\" or \"beta\"");
  }
  if (kind != expected) fail(where + ".kind", "expected \"" + std::string(expected == MixingKind::kAlpha ? "alpha" : "beta") + "\"");
  std::string description;
  if (profile.contains("description")) description = as_string(profile["description"], where + ".description");

  const Json& decay = profile["decay"];
  const std::string dwhere = where + ".decay";
  std::string key = variant_key(decay, dwhere);
  const Json& body = decay[key];
  const std::string inner = dwhere + "." + key;
  Decay parsed;
  if (key == "explicit") {
    parsed = ExplicitDecay{as_numbers(body, inner)};
  } else if (key == "geometric") {
    check_keys(body, {"c", "rho"}, inner);
    if (!body.contains("rho")) fail(inner, "missing \"rho\"");
    parsed = GeometricDecay{body.contains("c") ? as_number(body["c"], inner + ".c") : 1.0,
                            as_number(body["rho"], inner + ".rho")};
  } else if (key == "polynomial") {
    check_keys(body, {"c", "theta"}, inner);
    if (!body.contains("theta")) fail(inner, "missing \"theta\"");
    parsed = PolynomialDecay{body.contains("c") ? as_number(body["c"], inner + ".c") : 1.0,
                             as_number(body["theta"], inner + ".theta")};
  } else if (key == "m_dependent") {
    check_keys(body, {"m"}, inner);
    if (!body.contains("m")) fail(inner, "missing \"m\"");
    parsed = MDependentDecay{static_cast<std::int64_t>(as_unsigned(body["m"], inner + ".m"))};
  } else {
    fail(dwhere, "unknown decay \"" + key + "\" (explicit, geometric, polynomial, m_dependent)");
  }
  try {
    return MixingProfile(kind, std::move(parsed), description);
  } catch (const Error& e) {
    fail(where, e.what());
  }
}

Json profile_from_text(const std::string& text, MixingKind kind) {
  if (!text.empty() && text.front() == '{') {
    try {
      return Json::parse(text);
    } catch (const Json::parse_error& e) {
      fail("--profile", std::string("malformed JSON: ") + e.what());
    }
  }
  const std::string kind_name = kind == MixingKind::kAlpha ? "alpha" : "beta";
  if (text == "iid" || text == "from_driver") return Json(text);
  auto colon = text.find(':');
  if (colon == std::string::npos) fail("--profile", "unrecognised profile \"" + text + "\"");
  std::string name = text.substr(0, colon);
  std::string arg = text.substr(colon + 1);
  double x = 0.0;
  try {
    std::size_t used = 0;
    x = std::stod(arg, &used);
    if (used != arg.size()) throw std::invalid_argument(arg);
  } catch (const std::exception&) {
    fail("--profile", "bad numeric argument in \"" + text + "\"");
  }
  if (name == "geometric") return Json{{"kind", kind_name}, {"decay", {{"geometric", {{"c", 1.0}, {"rho", x}}}}}};
  if (name == "polynomial") return Json{{"kind", kind_name}, {"decay", {{"polynomial", {{"c", 1.0}, {"theta", x}}}}}};
  if (name == "m_dependent") return Json{{"kind", kind_name}, {"decay", {{"m_dependent", {{"m", static_cast<std::int64_t>(x)}}}}}};
  fail("--profile", "unrecognised profile \"" + text + "\"");
}

GridSpace parse_grid(const Json& grid) {
  std::string key = variant_key(grid, "grid");
  try {
    if (key == "uniform") {
      std::uint64_t n = as_unsigned(grid["uniform"], "grid.uniform");
      return GridSpace::uniform(static_cast<std::size_t>(n));
    }
    if (key == "custom") {
      const Json& body = grid["custom"];
      check_keys(body, {"points", "weights"}, "grid.custom");
      if (!body.contains("points") || !body.contains("weights")) {
        fail("grid.custom", "requires \"points\" and \"weights\"");
      }
      return GridSpace::custom(as_numbers(body["points"], "grid.custom.points"),
                               as_numbers(body["weights"], "grid.custom.weights"));
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kConfig) throw;
    fail("grid", e.what());
  }
  fail("grid", "unknown grid \"" + key + "\" (uniform, custom)");
}

FieldSpec build_field(const FieldConfig& field, const GridSpace& grid) {
  BasisSpec basis = parse_basis(field.basis);
  DriverModel driver = parse_driver(field.driver).with_components(basis.count);
  return FieldSpec::named(basis, driver, grid, field.scale_decay);
}

RunConfig parse_config(const Json& document, const std::string& command) {
  check_keys(document,
             {"field", "grid", "profile", "beta_profile", "s", "v", "p", "n", "n_schedule", "reps",
              "seed", "significance", "tol", "limit_factor", "y_grid", "w", "v_grid", "output"},
             "config");
  RunConfig cfg;
  cfg.command = command;
  try {
    if (document.contains("field")) {
      const Json& f = document["field"];
      check_keys(f, {"basis", "driver", "scale_decay", "limit_lambda"}, "field");
      FieldConfig fc;
      if (f.contains("basis")) fc.basis = as_string(f["basis"], "field.basis");
      BasisSpec basis = parse_basis(fc.basis);
      fc.basis = basis_name(basis);
      if (!f.contains("driver")) fail("field", "missing \"driver\"");
      fc.driver = canonical_driver(f["driver"]);
      if (f.contains("scale_decay")) fc.scale_decay = as_number(f["scale_decay"], "field.scale_decay");
      if (f.contains("limit_lambda")) {
        const Json& lam = f["limit_lambda"];
        if (!lam.is_array() || lam.size() != basis.count) {
          fail("field.limit_lambda", "expected a " + std::to_string(basis.count) + " x " +
                                         std::to_string(basis.count) + " matrix");
        }
        std::vector<double> flat;
        for (std::size_t i = 0; i < lam.size(); ++i) {
          auto row = as_numbers(lam[i], "field.limit_lambda[" + std::to_string(i) + "]");
          if (row.size() != basis.count) fail("field.limit_lambda", "row length mismatch");
          flat.insert(flat.end(), row.begin(), row.end());
        }
        fc.limit_lambda = std::move(flat);
      }
      cfg.field = std::move(fc);
    }
    if (document.contains("grid")) {
      parse_grid(document["grid"]);
      cfg.grid = document["grid"];
    }
    if (document.contains("profile")) {
      const Json& p = document["profile"];
      if (p.is_string() && p.get<std::string>() == "iid") {
        cfg.profile = Json("iid");
      } else if (!(p.is_string() && p.get<std::string>() == "from_driver")) {
        cfg.profile = profile_to_json(parse_profile(p, MixingKind::kAlpha));
        if (p.contains("description")) (*cfg.profile)["description"] = p["description"];
      }
    }
    if (document.contains("beta_profile")) {
      const Json& p = document["beta_profile"];
      cfg.beta_profile = profile_to_json(parse_profile(p, MixingKind::kBeta));
      if (p.contains("description")) (*cfg.beta_profile)["description"] = p["description"];
    }
    if (document.contains("s")) cfg.s = as_number(document["s"], "s");
    if (document.contains("v")) cfg.v = as_number(document["v"], "v");
    if (document.contains("p")) cfg.p = as_number(document["p"], "p");
    if (document.contains("n")) cfg.n = as_unsigned(document["n"], "n");
    if (document.contains("n_schedule")) {
      const Json& ns = document["n_schedule"];
      if (!ns.is_array() || ns.empty()) fail("n_schedule", "expected a non-empty array");
      cfg.n_schedule.clear();
      for (std::size_t i = 0; i < ns.size(); ++i) {
        cfg.n_schedule.push_back(as_unsigned(ns[i], "n_schedule[" + std::to_string(i) + "]"));
      }
    }
    if (document.contains("reps")) cfg.reps = as_unsigned(document["reps"], "reps");
    if (document.contains("seed")) {
      cfg.seed = as_unsigned(document["seed"], "seed");
      cfg.seed_defaulted = false;
    }
    if (document.contains("significance")) cfg.significance = as_number(document["significance"], "significance");
    if (document.contains("tol")) cfg.tol = as_number(document["tol"], "tol");
    if (document.contains("limit_factor")) cfg.limit_factor = as_unsigned(document["limit_factor"], "limit_factor");
    if (document.contains("y_grid")) cfg.y_grid = as_numbers(document["y_grid"], "y_grid");
    if (document.contains("w")) cfg.w = as_number(document["w"], "w");
    if (document.contains("v_grid")) cfg.v_grid = as_numbers(document["v_grid"], "v_grid");
    if (document.contains("output")) {
      const Json& o = document["output"];
      check_keys(o, {"report", "samples"}, "output");
      if (o.contains("report")) cfg.report_path = as_string(o["report"], "output.report");
      if (o.contains("samples")) cfg.samples_path = as_string(o["samples"], "output.samples");
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kConfig) throw;
    throw Error(ErrorCode::kConfig, e.what());
  }

  if (cfg.s < 2.0) fail("s", "must be >= 2");
  if (cfg.v && *cfg.v <= 2.0) fail("v", "must exceed 2");
  if (cfg.p && *cfg.p < 1.0) fail("p", "must be >= 1");
  if (cfg.n == 0) fail("n", "must be positive");
  for (std::size_t n : cfg.n_schedule) {
    if (n == 0) fail("n_schedule", "entries must be positive");
  }
  if (cfg.reps < kMinReps) fail("reps", "must be at least " + std::to_string(kMinReps));
  if (!(cfg.significance > 0.0 && cfg.significance <= 0.1)) fail("significance", "must lie in (0, 0.1]");
  if (!(cfg.tol > 0.0 && cfg.tol < 1.0)) fail("tol", "must lie in (0, 1)");
  if (cfg.limit_factor == 0) fail("limit_factor", "must be positive");
  for (double y : cfg.y_grid) {
    if (y < 1.0) fail("y_grid", "thresholds must be >= 1");
  }
  if (cfg.w && *cfg.w < 0.0) fail("w", "must be non-negative");
  if (cfg.v_grid) {
    for (double v : *cfg.v_grid) {
      if (v <= 2.0) fail("v_grid", "entries must exceed 2");
    }
  }
  return cfg;
}

Json effective_config(const RunConfig& cfg) {
  Json out = Json::object();
  if (cfg.field) {
    Json f{{"basis", cfg.field->basis}, {"driver", cfg.field->driver}, {"scale_decay", cfg.field->scale_decay}};
    if (cfg.field->limit_lambda) {
      std::size_t k = static_cast<std::size_t>(std::llround(std::sqrt(cfg.field->limit_lambda->size())));
      Json rows = Json::array();
      for (std::size_t i = 0; i < k; ++i) {
        rows.push_back(std::vector<double>(cfg.field->limit_lambda->begin() + i * k,
                                           cfg.field->limit_lambda->begin() + (i + 1) * k));
      }
      f["limit_lambda"] = rows;
    }
    out["field"] = f;
  }
  out["grid"] = cfg.grid;
  out["profile"] = cfg.profile ? *cfg.profile : Json("from_driver");
  if (cfg.beta_profile) out["beta_profile"] = *cfg.beta_profile;
  out["s"] = cfg.s;
  if (cfg.v) out["v"] = *cfg.v;
  if (cfg.p) out["p"] = *cfg.p;
  out["n"] = cfg.n;
  out["n_schedule"] = cfg.n_schedule;
  out["reps"] = cfg.reps;
  out["seed"] = cfg.seed;
  out["significance"] = cfg.significance;
  out["tol"] = cfg.tol;
  out["limit_factor"] = cfg.limit_factor;
  out["y_grid"] = cfg.y_grid;
  if (cfg.w) out["w"] = *cfg.w;
  if (cfg.v_grid) out["v_grid"] = *cfg.v_grid;
  return out;
}

std::string config_hash(const Json& effective) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : effective.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace lpclt::cli
