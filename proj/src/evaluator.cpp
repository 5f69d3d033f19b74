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

#include "seki/evaluator.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "seki/errors.hpp"
#include "seki/rng.hpp"

namespace seki {

namespace {

// Weight-stream version tag; bump if the keyed PRNG chain ever changes.
constexpr std::uint64_t kSurrogateStreamV1 = 0x53454b4931ULL;  // "SEKI1"

std::uint64_t MixField(std::uint64_t h, std::uint64_t field) {
  return SplitMix64(h ^ field);
}

double KeyedUnit(std::uint64_t h) {
  return static_cast<double>(h >> 11) * 0x1.0p-53;  // [0, 1)
}

std::vector<std::string> SplitTabs(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, '\t')) fields.push_back(field);
  return fields;
}

}  // namespace

const char* DirectionName(Direction d) {
  return d == Direction::kMaximize ? "maximize" : "minimize";
}

Direction DirectionFromName(const std::string& name) {
  if (name == "maximize") return Direction::kMaximize;
  if (name == "minimize") return Direction::kMinimize;
  throw SekiError(ErrorCode::kSchemaError, "unknown direction '" + name + "'");
}

Fitness MakeFitness(double raw_metric, const std::string& metric_name,
                    Direction direction) {
  const double oriented =
      direction == Direction::kMaximize ? raw_metric : -raw_metric;
  return Fitness{oriented, raw_metric, metric_name, direction};
}

Fitness Evaluator::Evaluate(const Architecture& arch) const {
  if (arch.space_id != space_id()) {
    throw SekiError(ErrorCode::kSpaceMismatch,
                    std::string("architecture belongs to ") +
                        SpaceIdName(arch.space_id) + ", oracle covers " +
                        SpaceIdName(space_id()));
  }
  calls_.fetch_add(1);
  return DoEvaluate(arch);
}

SurrogateEvaluator::SurrogateEvaluator(const SpaceDescriptor& space,
                                       std::uint64_t seed, double beta)
    : space_(space), seed_(seed), beta_(beta) {
  if (beta < 0) {
    throw SekiError(ErrorCode::kConfigError, "beta must be >= 0");
  }
}

double SurrogateEvaluator::unary_weight(int slot, int op) const {
  std::uint64_t h = MixField(kSurrogateStreamV1, seed_);
  h = MixField(h, static_cast<std::uint64_t>(space_.space_id));
  h = MixField(h, 1);  // unary tag
  h = MixField(h, static_cast<std::uint64_t>(slot));
  h = MixField(h, static_cast<std::uint64_t>(op));
  return KeyedUnit(h);
}

double SurrogateEvaluator::pair_weight(int slot, int op, int slot2,
                                       int op2) const {
  std::uint64_t h = MixField(kSurrogateStreamV1, seed_);
  h = MixField(h, static_cast<std::uint64_t>(space_.space_id));
  h = MixField(h, 2);  // pair tag
  h = MixField(h, static_cast<std::uint64_t>(slot));
  h = MixField(h, static_cast<std::uint64_t>(op));
  h = MixField(h, static_cast<std::uint64_t>(slot2));
  h = MixField(h, static_cast<std::uint64_t>(op2));
  return KeyedUnit(h);
}

Fitness SurrogateEvaluator::DoEvaluate(const Architecture& arch) const {
  double score = 0;
  const int slots = space_.slot_count;
  for (int s = 0; s < slots; ++s) score += unary_weight(s, arch.ops[s]);
  if (beta_ > 0) {
    for (int s = 0; s < slots; ++s) {
      for (int t = s + 1; t < slots; ++t) {
        score += beta_ * pair_weight(s, arch.ops[s], t, arch.ops[t]);
      }
    }
  }
  return MakeFitness(score, metric_name(), Direction::kMaximize);
}

TabularBenchmark LoadTabular(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw SekiError(ErrorCode::kFileError, "cannot open '" + path + "'");
  }
  TabularBenchmark table;
  std::optional<SpaceId> space_id;
  std::string line;
  int line_no = 0;
  bool saw_magic = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream hdr(line.substr(1));
      std::string key;
      hdr >> key;
      if (key == "seki-tabular") {
        saw_magic = true;
      } else if (key == "space") {
        std::string name;
        hdr >> name;
        space_id = SpaceIdFromName(name);
      } else if (key == "metrics") {
        std::string column;
        while (hdr >> column) {
          const size_t colon = column.find(':');
          if (colon == std::string::npos) {
            throw SekiError(ErrorCode::kSchemaError,
                            "line " + std::to_string(line_no) +
                                ": metric column needs name:direction");
          }
          table.metric_names.push_back(column.substr(0, colon));
          table.directions.push_back(
              DirectionFromName(column.substr(colon + 1)));
        }
      }
      continue;
    }
    if (!saw_magic || !space_id || table.metric_names.empty()) {
      throw SekiError(ErrorCode::kSchemaError,
                      "line " + std::to_string(line_no) +
                          ": data row before complete header "
                          "(#seki-tabular, #space, #metrics)");
    }
    const auto fields = SplitTabs(line);
    if (fields.size() != table.metric_names.size() + 1) {
      throw SekiError(ErrorCode::kSchemaError,
                      "line " + std::to_string(line_no) + ": expected " +
                          std::to_string(table.metric_names.size() + 1) +
                          " tab-separated fields, got " +
                          std::to_string(fields.size()));
    }
    std::string canonical;
    try {
      canonical = ParseArchitecture(DescribeSpace(*space_id), fields[0])
                      .canonical_text;
    } catch (const SekiError& e) {
      throw SekiError(ErrorCode::kInvalidArchKey,
                      "line " + std::to_string(line_no) + ": " + e.what());
    }
    std::vector<double> values;
    for (size_t i = 1; i < fields.size(); ++i) {
      double v;
      try {
        v = std::stod(fields[i]);
      } catch (const std::exception&) {
        throw SekiError(ErrorCode::kSchemaError,
                        "line " + std::to_string(line_no) +
                            ": non-numeric metric '" + fields[i] + "'");
      }
      if (!std::isfinite(v)) {
        throw SekiError(ErrorCode::kSchemaError,
                        "line " + std::to_string(line_no) +
                            ": non-finite metric value");
      }
      values.push_back(v);
    }
    table.rows[canonical] = std::move(values);
  }
  if (!saw_magic || table.rows.empty()) {
    throw SekiError(ErrorCode::kSchemaError,
                    "'" + path + "' has no header or no data rows");
  }
  table.space_id = *space_id;
  return table;
}

TabularEvaluator::TabularEvaluator(TabularBenchmark table,
                                   const std::string& metric)
    : table_(std::move(table)),
      metric_(metric),
      column_(0),
      direction_(Direction::kMaximize) {
  for (size_t i = 0; i < table_.metric_names.size(); ++i) {
    if (table_.metric_names[i] == metric) {
      column_ = i;
      direction_ = table_.directions[i];
      return;
    }
  }
  throw SekiError(ErrorCode::kConfigError,
                  "table has no metric '" + metric + "'");
}

Fitness TabularEvaluator::DoEvaluate(const Architecture& arch) const {
  const auto it = table_.rows.find(arch.canonical_text);
  if (it == table_.rows.end()) {
    throw SekiError(ErrorCode::kArchitectureNotInTable, arch.canonical_text);
  }
  return MakeFitness(it->second[column_], metric_, direction_);
}

std::pair<Architecture, Fitness> OracleBest(const EvaluatorHandle& oracle,
                                            const SpaceDescriptor& space) {
  std::optional<std::pair<Architecture, Fitness>> best;
  EnumerateSpace(space, [&](const Architecture& arch) {
    Fitness f = oracle->Evaluate(arch);
    if (!best || f.oriented_value > best->second.oriented_value) {
      best = {arch, f};
    }
  });
  return *best;
}

}  // namespace seki
