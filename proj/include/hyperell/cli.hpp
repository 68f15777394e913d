// Copyright 2026 The hyperell Authors.
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

// Command-line front end: lpoly, scan, extremal, constants.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hyperell/boundlab.hpp"

namespace hyperell::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInputError = 2,
  kConsistencyError = 3,
  kSoundnessViolation = 4,
  kCertificationFailure = 5,
};

/// Everything a command needs. The file form is flat `key=value` lines whose
/// keys are the long flag names; list-valued keys repeat.
struct RunConfig {
  std::string command = "scan";
  std::uint32_t q = 3;
  int d = 5;
  std::string D;
  std::vector<std::string> targets;
  std::string side = "majorant";
  int N = 8;
  std::vector<std::string> degree_policies;
  std::vector<std::string> modes;
  std::string sample = "all";
  std::uint64_t seed = 1;
  int grid = 1 << 14;
  int extremal_grid = 0;
  std::string out;
  int nmax = 12;
  int threads = 0;
  std::uint64_t budget = 1u << 20;
  bool interval_method = true;
  double slack = 1e-9;

  std::string to_text() const;
  /// Throws ParseError on unknown keys or malformed values.
  static RunConfig from_text(const std::string& text);
  bool operator==(const RunConfig&) const = default;
};

RunConfig load_config(const std::string& path);

/// Rejects invalid combinations before any computation (ConfigError or
/// ParseError).
void validate(const RunConfig& config);

/// ScanConfig for a validated scan command.
ScanConfig to_scan_config(const RunConfig& config);

/// Runs a validated or unvalidated config; errors map to exit codes.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

int cmd_lpoly(const RunConfig& config, std::ostream& out);
int cmd_scan(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_extremal(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_constants(const RunConfig& config, std::ostream& out);

/// Parses argv (CLI11) and runs.
int main_entry(int argc, char** argv);

}  // namespace hyperell::cli
