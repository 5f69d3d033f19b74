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

#ifndef SEKI_LLM_HPP_
#define SEKI_LLM_HPP_

#include <memory>
#include <string>

#include "seki/evaluator.hpp"
#include "seki/prompt.hpp"
#include "seki/rng.hpp"
#include "seki/search_space.hpp"

namespace seki {

struct LlmParams {
  std::string model_name = "qwen2.5-32b";
  double temperature = 0.7;
  int max_tokens = 2048;
  int timeout_ms = 60000;
  int max_retries = 3;
  int backoff_base_ms = 250;  // doubled per retry, jitter-free
};

class LlmBackend {
 public:
  virtual ~LlmBackend() = default;

  virtual std::string Complete(const Prompt& prompt,
                               const LlmParams& params) = 0;
  virtual bool replayable() const = 0;
  virtual std::string kind() const = 0;
};

// Chat-completions HTTP backend. Credentials come from the
// SEKI_LLM_API_KEY environment variable; transient failures (connect
// errors, timeouts, 429, 5xx) retry with exponential backoff.
std::unique_ptr<LlmBackend> MakeHttpBackend(const std::string& endpoint_url);

enum class ScriptedKind {
  kRandomValid,
  kGreedyMutation,
  kMajorityRecombination,
  // greedy_mutation for prompts C/D, majority_recombination for prompt E;
  // the deterministic stand-in for a full SEKI run.
  kSekiMix,
  // Never emits an architecture; exercises the parse-fallback path.
  kNull,
};

ScriptedKind ScriptedKindFromName(const std::string& name);
const char* ScriptedKindName(ScriptedKind kind);

// Deterministic agents implementing the backend interface for tests and
// desk-scale runs. greedy variants require an evaluator.
std::unique_ptr<LlmBackend> MakeScriptedAgent(ScriptedKind kind,
                                              const SpaceDescriptor& space,
                                              EvaluatorHandle evaluator,
                                              SeededRng rng);

}  // namespace seki

#endif  // SEKI_LLM_HPP_
