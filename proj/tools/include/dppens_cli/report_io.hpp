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

#ifndef DPPENS_CLI_REPORT_IO_HPP
#define DPPENS_CLI_REPORT_IO_HPP

#include <iosfwd>
#include <vector>

#include "dppens/experiment.hpp"
#include "dppens_cli/verify.hpp"
#include "json.hpp"

namespace dppens::cli {

inline constexpr int kSchemaVersion = 1;

Json to_json(const ExperimentReport& report, bool include_timing);

/// One row per (scheme, m, repeat).
void write_csv(std::ostream& out, const ExperimentReport& report);

/// One row per check.
void write_csv(std::ostream& out, const std::vector<SuiteResult>& results);

/// Round-trip formatting for CSV cells.
std::string format_double(double v);

}  // namespace dppens::cli

#endif  // DPPENS_CLI_REPORT_IO_HPP
