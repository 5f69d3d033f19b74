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

#ifndef SEKI_EVALUATOR_HPP_
#define SEKI_EVALUATOR_HPP_

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "seki/search_space.hpp"

namespace seki {

enum class Direction { kMaximize, kMinimize };

const char* DirectionName(Direction d);
Direction DirectionFromName(const std::string& name);

// Score with a fixed orientation: oriented_value is always
// higher-is-better so ranking code never special-cases minimized metrics.
struct Fitness {
  double oriented_value;
  double raw_metric;
  std::string metric_name;
  Direction direction;

  bool operator==(const Fitness& other) const {
    return oriented_value == other.oriented_value &&
           raw_metric == other.raw_metric &&
           metric_name == other.metric_name && direction == other.direction;
  }
};

Fitness MakeFitness(double raw_metric, const std::string& metric_name,
                    Direction direction);

class Evaluator {
 public:
  virtual ~Evaluator() = default;

  Fitness Evaluate(const Architecture& arch) const;

  virtual SpaceId space_id() const = 0;
  virtual std::string metric_name() const = 0;
  virtual Direction direction() const = 0;

  std::uint64_t call_count() const { return calls_.load(); }
  void reset_call_count() { calls_.store(0); }

 protected:
  virtual Fitness DoEvaluate(const Architecture& arch) const = 0;

 private:
  mutable std::atomic<std::uint64_t> calls_{0};
};

using EvaluatorHandle = std::shared_ptr<const Evaluator>;

// Synthetic oracle: score(a) = sum_s w[s][op(s)]
//                            + beta * sum_{s<s'} v[s,op(s),s',op(s')].
// Weights come from a keyed counter-based PRNG (SplitMix64 chain over the
// field tuple) so they are order-independent and identical on every
// platform. For DARTS only the operator genes participate.
class SurrogateEvaluator : public Evaluator {
 public:
  SurrogateEvaluator(const SpaceDescriptor& space, std::uint64_t seed,
                     double beta);

  SpaceId space_id() const override { return space_.space_id; }
  std::string metric_name() const override { return "surrogate_score"; }
  Direction direction() const override { return Direction::kMaximize; }

  double unary_weight(int slot, int op) const;
  double pair_weight(int slot, int op, int slot2, int op2) const;
  double beta() const { return beta_; }
  std::uint64_t seed() const { return seed_; }

 protected:
  Fitness DoEvaluate(const Architecture& arch) const override;

 private:
  const SpaceDescriptor& space_;
  std::uint64_t seed_;
  double beta_;
};

struct TabularBenchmark {
  SpaceId space_id;
  std::vector<std::string> metric_names;
  std::vector<Direction> directions;
  // canonical_text -> one value per metric column
  std::map<std::string, std::vector<double>> rows;
};

// Loads the line-oriented tabular format (see docs/tabular-format.md).
TabularBenchmark LoadTabular(const std::string& path);

class TabularEvaluator : public Evaluator {
 public:
  TabularEvaluator(TabularBenchmark table, const std::string& metric);

  SpaceId space_id() const override { return table_.space_id; }
  std::string metric_name() const override { return metric_; }
  Direction direction() const override { return direction_; }
  size_t row_count() const { return table_.rows.size(); }

 protected:
  Fitness DoEvaluate(const Architecture& arch) const override;

 private:
  TabularBenchmark table_;
  std::string metric_;
  size_t column_;
  Direction direction_;
};

// Exhaustive optimum of an enumerable space (ties -> lexicographically
// smallest genes, which is enumeration order).
std::pair<Architecture, Fitness> OracleBest(const EvaluatorHandle& oracle,
                                            const SpaceDescriptor& space);

}  // namespace seki

#endif  // SEKI_EVALUATOR_HPP_
