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

#include "seki/report.hpp"

#include <cmath>
#include <fstream>
#include <map>

#include "seki/errors.hpp"
#include "seki/orchestrator.hpp"

namespace seki {

Report SummarizeTraces(const std::vector<std::string>& trace_paths) {
  if (trace_paths.empty()) {
    throw SekiError(ErrorCode::kConfigError, "no trace files given");
  }
  Report report;
  std::map<std::string, std::vector<double>> by_method;
  for (const std::string& path : trace_paths) {
    const SearchTrace trace = ReadTrace(path);
    const std::string method = SearchMethodName(trace.config.method);
    report.rows.push_back(ReportRow{method, trace.config.seed,
                                    trace.best_fitness.oriented_value,
                                    trace.best_iteration, trace.evaluations});
    by_method[method].push_back(trace.best_fitness.oriented_value);
  }
  for (const auto& [method, values] : by_method) {
    double sum = 0;
    for (double v : values) sum += v;
    const double mean = sum / values.size();
    double var = 0;
    if (values.size() > 1) {
      for (double v : values) var += (v - mean) * (v - mean);
      var /= values.size() - 1;
    }
    report.aggregates.push_back(ReportAggregate{
        method, static_cast<int>(values.size()), mean, std::sqrt(var)});
  }
  return report;
}

void WriteReportCsv(const Report& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw SekiError(ErrorCode::kFileError, "cannot write '" + path + "'");
  }
  out << "kind,method,seed,runs,best_fitness,best_iteration,evaluations,"
         "mean_best,stddev_best\n";
  for (const ReportRow& r : report.rows) {
    out << "run," << r.method << "," << r.seed << ",," << r.best_fitness
        << "," << r.best_iteration << "," << r.evaluations << ",,\n";
  }
  for (const ReportAggregate& a : report.aggregates) {
    out << "aggregate," << a.method << ",," << a.runs << ",,,," << a.mean_best
        << "," << a.stddev_best << "\n";
  }
}

}  // namespace seki
