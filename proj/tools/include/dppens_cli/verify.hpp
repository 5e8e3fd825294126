// Copyright 2026 The dppens Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DPPENS_CLI_VERIFY_HPP
#define DPPENS_CLI_VERIFY_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dppens/samplers.hpp"
#include "json.hpp"

namespace dppens::cli {

using Json = nlohmann::ordered_json;

/// Names accepted by `dppens verify --suite`.
const std::vector<std::string>& verify_suites();

struct VerifyOptions {
  std::string suite = "thm1";
  std::vector<Index> n;           // empty: suite default
  std::vector<Index> k;           // empty: every valid size
  std::vector<double> alpha;      // empty: suite default
  Index seeds = 5;                // random instances per grid cell
  std::uint64_t seed = 0;
  std::vector<std::size_t> draws; // Monte Carlo suites; empty: suite default
  unsigned threads = 1;
};

/// One checked instance: passes iff error <= tolerance.
struct Check {
  std::string name;
  Json instance;  // small parameters (seed, n, k, alpha, ...)
  double error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  Json replay;    // full input (matrix, vectors) for the worst case
};

struct SuiteResult {
  std::string suite;
  std::vector<Check> checks;

  bool passed() const;
  /// Check with the largest error / tolerance ratio; null when empty.
  const Check* worst() const;
};

/// Runs one suite. Throws InvalidArgument on an unknown suite or sizes
/// beyond the enumeration caps.
SuiteResult run_verify(const VerifyOptions& options);

Json to_json(const SuiteResult& result);

}  // namespace dppens::cli

#endif  // DPPENS_CLI_VERIFY_HPP
