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

#ifndef SEKI_ORCHESTRATOR_HPP_
#define SEKI_ORCHESTRATOR_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "seki/evaluator.hpp"
#include "seki/llm.hpp"
#include "seki/prompt.hpp"
#include "seki/repository.hpp"
#include "seki/search_space.hpp"

namespace seki {

enum class AnchorMode { kChain, kBest };
enum class SearchMethod { kSeki, kRandom, kMutation };

const char* SearchMethodName(SearchMethod m);
SearchMethod SearchMethodFromName(const std::string& name);

struct SearchConfig {
  SpaceId space_id = SpaceId::kNas201;
  SearchMethod method = SearchMethod::kSeki;
  int n = 50;
  int lambda = 35;
  int gamma = 15;
  int k = 16;
  int xi = 8;
  std::uint64_t seed = 1;
  std::string evaluator_spec = "surrogate:seed=42,beta=0";
  std::string llm_spec = "mock:greedy";
  LlmParams llm_params;
  std::string task_description;  // empty -> space default
  int max_parse_retries = 2;
  AnchorMode anchor_mode = AnchorMode::kChain;
  std::string template_dir;  // empty -> embedded defaults

  void Validate() const;  // throws ConfigError
  // xi == k is allowed but flagged: the reference formulation uses xi < k.
  bool extended_xi_mode() const { return xi == k; }
};

// Builds the evaluator named by a `kind:key=value,...` selector, e.g.
// "surrogate:seed=42,beta=0.5" or "tabular:path=t.tsv,metric=cifar10-test".
EvaluatorHandle MakeEvaluator(const std::string& spec, SpaceId space_id);

// Builds the backend named by a selector: "mock:<agent>" or
// "http:endpoint=<url>". Scripted agents get their own evaluator instance
// so their probing never pollutes the run's evaluation budget counter.
std::unique_ptr<LlmBackend> MakeBackend(const std::string& spec,
                                        const SearchConfig& config);

struct IterationRecord {
  int iteration = 0;
  Phase phase = Phase::kSelfEvolution;
  std::string anchor;                  // self-evolution input (canonical)
  std::vector<std::string> exemplars;  // knowledge-inspiration inputs
  std::string prompt_c_digest;
  std::string prompt_d_digest;
  std::string prompt_e_digest;
  std::string strategy_text;  // raw LLM output for prompt C
  std::string llm_raw;        // raw LLM output that yielded the architecture
  bool parse_ok = true;
  int reask_count = 0;          // format-reminder re-asks consumed
  bool fallback_random = false;  // random substitution after exhaustion
  bool duplicate = false;
  std::string arch;
  double raw_metric = 0;
  double oriented = 0;
  double best_so_far = 0;  // oriented
};

struct SearchTrace {
  SearchConfig config;
  std::string init_arch;
  double init_raw = 0;
  double init_oriented = 0;
  std::vector<IterationRecord> iterations;
  std::string best_arch;
  Fitness best_fitness;
  int best_iteration = 0;       // iteration of the best entry
  int first_best_iteration = 0; // first iteration attaining the best value
  std::uint64_t evaluations = 0;

  // Repository rebuilt from the records (init + iterations).
  KnowledgeRepository ReconstructRepository() const;
};

SearchTrace RunSeki(const SearchConfig& config);
SearchTrace RunRandomBaseline(const SearchConfig& config);
SearchTrace RunMutationBaseline(const SearchConfig& config);
SearchTrace RunSearch(const SearchConfig& config);  // dispatch on method

// Trace (de)serialization: JSONL, first line config, then init, one line
// per iteration, final summary line. Timestamps live in a non-canonical
// "ts" field excluded from replay comparison.
void WriteTrace(const SearchTrace& trace, const std::string& path);
SearchTrace ReadTrace(const std::string& path);

struct ReplayReport {
  bool ok = true;
  int divergence_iteration = -1;
  std::string divergence_field;
};

// Re-runs a scripted-backend trace and compares canonical fields.
ReplayReport Replay(const std::string& trace_path);

struct SweepCell {
  int lambda = 0, gamma = 0, k = 0, xi = 0;
  std::uint64_t seed = 0;
  bool skipped = false;
  std::string skip_reason;
  double best_fitness = 0;
  int best_iteration = 0;
  std::uint64_t evaluations = 0;
};

struct SweepGrid {
  std::vector<int> lambdas;       // gamma = n - lambda
  std::vector<int> ks;
  std::vector<int> xis;           // absolute; mutually exclusive with ratios
  std::vector<double> xi_ratios;  // xi = round(k * ratio), min 1
  std::vector<std::uint64_t> seeds;
};

std::vector<SweepCell> AblationSweep(const SearchConfig& base,
                                     const SweepGrid& grid);
void WriteSweepCsv(const std::vector<SweepCell>& cells,
                   const std::string& path);

}  // namespace seki

#endif  // SEKI_ORCHESTRATOR_HPP_
