// Copyright 2026 The qinvert Authors
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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

namespace qinvert::cli {

/// Process exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kParseError = 2,
  kInvalidState = 3,
  kDomainError = 4,
};

struct Report {
  nlohmann::ordered_json document;
  std::string summary;
  int exit_code = kOk;
};

struct ConcurrenceOptions {
  std::filesystem::path state_file;
  bool minimize = false;
  int restarts = 4;
  std::uint64_t seed = 0;
};

struct VerifyOptions {
  std::string suite = "all";
  int dmin = 2;
  std::optional<int> dmax;
  std::uint64_t seed = 0;
};

struct QidOptions {
  int dim = 2;
  std::filesystem::path state_file;
  double xi2_re = 0.0;
  double xi2_im = 0.0;
  bool optimal = false;
};

struct ChannelOptions {
  std::string kind;
  int dim = 2;
  std::filesystem::path state_file;
  std::optional<double> nu;
  std::optional<double> eta;
};

// Each command throws the library error types on bad input; run() maps them
// to exit codes.
Report cmd_concurrence(const ConcurrenceOptions& options);
Report cmd_verify(const VerifyOptions& options);
Report cmd_qid(const QidOptions& options);
Report cmd_channel(const ChannelOptions& options);

/// Full command line entry point. Writes the JSON report to `out` and the
/// summary (or error message) to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qinvert::cli
