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

// Invariant batteries driven by `qinvert verify`. Each check reports the
// worst residual across the requested dimension range.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qinvert {

struct CheckResult {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  double tolerance = 0.0;
};

enum class Suite {
  Algebra,                ///< superoperator identities (sharp, adjoints, projectors)
  HermiticityEquivalence, ///< left-right Hermitian <=> Hermiticity preserving
  PurityInequality,       ///< 1 + tr rho_AB^2 >= tr rho_A^2 + tr rho_B^2
  Family,                 ///< inverter spectrum, CP/positivity ranges, decompositions
  Qid,                    ///< QID circuit against closed forms
  All,
};

/// CLI names: algebra, appendixB, appendixC, family, qid, all.
/// Throws std::invalid_argument for unknown names.
Suite parse_suite(std::string_view name);
std::string suite_name(Suite suite);

/// Largest dmax accepted for a suite (6, or 4 for qid and all).
int max_suite_dim(Suite suite);

/// Runs a battery for every D in [dmin, dmax]. Throws DomainError unless
/// 2 <= dmin <= dmax <= max_suite_dim(suite).
std::vector<CheckResult> run_suite(Suite suite, int dmin, int dmax, std::uint64_t seed);

}  // namespace qinvert
