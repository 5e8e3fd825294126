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

#include "dppens_cli/report_io.hpp"

#include <charconv>
#include <optional>
#include <ostream>
#include <string>

namespace dppens::cli {
namespace {

Json quartiles_json(const std::optional<Quartiles>& q) {
  if (!q) return nullptr;
  return Json{{"q25", q->q25}, {"q50", q->q50}, {"q75", q->q75}};
}

Json optional_json(const std::optional<double>& v) {
  if (!v) return nullptr;
  return *v;
}

std::string cell(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

std::string cell(const Json& j) {
  if (j.is_null()) return {};
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_float()) return format_double(j.get<double>());
  return j.dump();
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

Json to_json(const ExperimentReport& report, bool include_timing) {
  Json records = Json::array();
  for (const auto& rec : report.records) {
    Json repeats = Json::array();
    for (const auto& r : rec.repeats) {
      repeats.push_back({{"repeat", r.repeat},
                         {"smape_bulk", optional_json(r.smape_bulk)},
                         {"smape_tail", optional_json(r.smape_tail)},
                         {"frobenius_rel_error", optional_json(r.frobenius_rel_error)},
                         {"distinct_landmarks", r.distinct_landmarks},
                         {"total_landmarks", r.total_landmarks}});
    }
    records.push_back({{"scheme", std::string(to_string(rec.scheme))},
                       {"k", rec.k},
                       {"m", rec.m},
                       {"smape_bulk", quartiles_json(rec.smape_bulk)},
                       {"smape_tail", quartiles_json(rec.smape_tail)},
                       {"frobenius_rel_error", quartiles_json(rec.frobenius_rel_error)},
                       {"distinct_landmarks", quartiles_json(rec.distinct_landmarks)},
                       {"repeats", std::move(repeats)}});
  }
  Json j{{"n_points", report.n_points}};
  if (report.kind == "krr-ensemble") {
    j["n_train"] = report.n_train;
    j["n_test_bulk"] = report.n_test_bulk;
    j["n_test_tail"] = report.n_test_tail;
    j["alpha_strat"] = report.alpha_strat;
    j["rls_threshold"] = report.rls_threshold;
  }
  j["records"] = std::move(records);
  if (include_timing) j["wall_time_seconds"] = report.wall_time_seconds;
  return j;
}

void write_csv(std::ostream& out, const ExperimentReport& report) {
  out << "kind,scheme,k,m,repeat,smape_bulk,smape_tail,frobenius_rel_error,"
         "distinct_landmarks,total_landmarks\n";
  for (const auto& rec : report.records) {
    for (const auto& r : rec.repeats) {
      out << report.kind << ',' << to_string(rec.scheme) << ',' << rec.k << ',' << rec.m << ','
          << r.repeat << ',' << cell(r.smape_bulk) << ',' << cell(r.smape_tail) << ','
          << cell(r.frobenius_rel_error) << ',' << r.distinct_landmarks << ','
          << r.total_landmarks << '\n';
    }
  }
}

void write_csv(std::ostream& out, const std::vector<SuiteResult>& results) {
  out << "suite,check,seed,n,k,alpha,draws,error,tolerance,passed\n";
  for (const auto& result : results) {
    for (const auto& c : result.checks) {
      const auto field = [&](const char* key) {
        return c.instance.contains(key) ? cell(c.instance[key]) : std::string();
      };
      out << result.suite << ',' << c.name << ',' << field("seed") << ',' << field("n") << ','
          << field("k") << ',' << field("alpha") << ',' << field("draws") << ','
          << format_double(c.error) << ',' << format_double(c.tolerance) << ','
          << (c.passed ? "true" : "false") << '\n';
    }
  }
}

}  // namespace dppens::cli
