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

// Subcommand implementations behind the lpclt executable. Each command
// turns a validated RunConfig into a JSON report, an aligned text summary
// and an exit code (0 pass, 1 statistical or bound failure, 2 usage or
// configuration error).

#include <optional>
#include <string>
#include <vector>

#include "lpclt/config.hpp"
#include "lpclt/parallel.hpp"

namespace lpclt::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

const std::vector<std::string>& command_names();

struct SampleRecord {
  std::size_t rep = 0;
  std::size_t n = 0;
  double p = 0.0;
  double s = 0.0;
  double norm_value = 0.0;
};

struct CommandResult {
  int exit_code = kExitPass;
  Json result = Json::object();
  std::vector<std::string> notes;
  // Rows of the text summary: (label, value).
  std::vector<std::pair<std::string, std::string>> table;
  std::vector<SampleRecord> samples;
};

// Throws Error for invalid input; the caller maps that to exit code 2.
CommandResult run_command(const RunConfig& config, Parallelism par = {});

// Full report document. `wall_seconds` and `utc` go under "timestamp",
// the only field allowed to differ between identical runs.
Json make_report(const RunConfig& config, const CommandResult& result, double wall_seconds,
                 const std::string& utc);

Json make_error_report(const std::string& command, const std::string& message,
                       const std::string& utc);

std::string format_table(const std::vector<std::pair<std::string, std::string>>& rows);

void write_samples_csv(const std::string& path, const std::vector<SampleRecord>& samples);

// Library version with the git description of the build tree.
std::string version_string();

// JSON number, or the string "inf" / "-inf" / "nan".
Json json_number(double x);

}  // namespace lpclt::cli
