// Copyright 2026 The SEKI Engine Authors.
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

#ifndef SEKI_REPORT_HPP_
#define SEKI_REPORT_HPP_

#include <string>
#include <vector>

namespace seki {

struct ReportRow {
  std::string method;
  std::uint64_t seed;
  double best_fitness;
  int best_iteration;
  std::uint64_t evaluations;
};

struct ReportAggregate {
  std::string method;
  int runs;
  double mean_best;
  double stddev_best;  // sample stddev; 0 for a single run
};

struct Report {
  std::vector<ReportRow> rows;
  std::vector<ReportAggregate> aggregates;
};

// Summarizes one row per trace plus one aggregate row per method.
Report SummarizeTraces(const std::vector<std::string>& trace_paths);
void WriteReportCsv(const Report& report, const std::string& path);

}  // namespace seki

#endif  // SEKI_REPORT_HPP_
