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


#pragma once

// JSON run configuration shared by every CLI subcommand. Parsing is strict:
// unknown keys and wrong types are config errors (exit code 2), and the
// effective configuration, defaults included, is echoed into each report.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lpclt/discretize.hpp"
#include "lpclt/driver.hpp"
#include "lpclt/fieldgen.hpp"
#include "lpclt/mixing.hpp"

namespace lpclt::cli {

using Json = nlohmann::json;

struct FieldConfig {
  std::string basis = "const";
  Json driver;  // canonical driver object, e.g. {"ar1": {"rho": 0.5, "sigma_innov": 0.866}}
  double scale_decay = 0.0;
  std::optional<std::vector<double>> limit_lambda;  // K x K row-major
};

struct RunConfig {
  std::string command;
  std::optional<FieldConfig> field;
  Json grid = Json{{"uniform", 256}};
  std::optional<Json> profile;       // alpha profile; absent = derived from the driver (or iid)
  std::optional<Json> beta_profile;
  double s = 2.0;
  std::optional<double> v;
  std::optional<double> p;
  std::size_t n = 1024;
  std::vector<std::size_t> n_schedule{16, 32, 64, 128, 256, 512, 1024, 2048, 4096};
  std::size_t reps = 1000;
  std::uint64_t seed = 0;
  bool seed_defaulted = true;
  double significance = 0.01;
  double tol = 1e-10;
  std::size_t limit_factor = 4;
  std::vector<double> y_grid{1, 2, 5, 10, 20, 50, 100};
  std::optional<double> w;
  std::optional<std::vector<double>> v_grid;
  std::optional<std::string> samples_path;
  std::string report_path = "report.json";
};

// Throws Error(kConfig) on unknown keys, wrong types or invalid values.
RunConfig parse_config(const Json& document, const std::string& command);

// Effective configuration, defaults filled in. Output paths are excluded so
// the echo and its hash depend only on what determines the numbers.
Json effective_config(const RunConfig& config);

// FNV-1a 64-bit hash of the compact dump, as 16 hex digits.
std::string config_hash(const Json& effective);

DriverModel parse_driver(const Json& driver);
Json canonical_driver(const Json& driver);
MixingProfile parse_profile(const Json& profile, MixingKind expected);
GridSpace parse_grid(const Json& grid);
FieldSpec build_field(const FieldConfig& field, const GridSpace& grid);

// Profile shorthands for --profile: "iid", "from_driver", "geometric:<rho>",
// "polynomial:<theta>", "m_dependent:<m>"; anything starting with '{' is
// parsed as JSON.
Json profile_from_text(const std::string& text, MixingKind kind);

}  // namespace lpclt::cli
