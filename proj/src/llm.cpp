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

#include "seki/llm.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#include "httplib.h"
#include "json.hpp"

#include "seki/errors.hpp"

namespace seki {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Scripted agents

class ScriptedAgentBase : public LlmBackend {
 public:
  ScriptedAgentBase(const SpaceDescriptor& space, EvaluatorHandle evaluator,
                    SeededRng rng)
      : space_(space), evaluator_(std::move(evaluator)), rng_(rng) {}

  bool replayable() const override { return true; }

 protected:
  // Last architecture mentioned in the prompt (the Prompt-C/D anchor).
  Architecture PromptArchitecture(const Prompt& prompt) const {
    return ExtractArchitecture(space_, prompt.JoinedText());
  }

  std::vector<Architecture> PromptExemplars(const Prompt& prompt) const {
    return ExtractAllArchitectures(space_, prompt.JoinedText());
  }

  std::string EmitArchitecture(const Architecture& arch,
                               const std::string& lead) const {
    return lead + "\n" + arch.canonical_text;
  }

  // Best neighbor under the evaluator; deterministic order (slot ascending,
  // operator ascending) makes ties resolve to the lowest slot / operator
  // index. Returns the input itself at a local optimum.
  Architecture BestNeighbor(const Architecture& arch) const {
    const double base = evaluator_->Evaluate(arch).oriented_value;
    std::optional<Architecture> best;
    double best_score = base;
    for (const Architecture& candidate : Neighbors(arch)) {
      const double score = evaluator_->Evaluate(candidate).oriented_value;
      if (score > best_score) {
        best_score = score;
        best = candidate;
      }
    }
    return best ? *best : arch;
  }

  // Per-slot majority over exemplar genes; ties pick randomly among the
  // modal values. DARTS input genes get the same treatment plus a repair
  // pass for the distinct-inputs constraint.
  Architecture MajorityArchitecture(const std::vector<Architecture>& pool) {
    const int op_count = static_cast<int>(space_.operator_names.size());
    std::vector<int> ops(space_.slot_count);
    for (int slot = 0; slot < space_.slot_count; ++slot) {
      std::vector<int> counts(op_count, 0);
      for (const auto& a : pool) ++counts[a.ops[slot]];
      ops[slot] = ModalChoice(counts);
    }
    if (space_.space_id != SpaceId::kDarts) {
      return MakeArchitecture(space_, std::move(ops));
    }
    const int input_slots = static_cast<int>(pool.front().inputs.size());
    std::vector<int> inputs(input_slots);
    for (int slot = 0; slot < input_slots; ++slot) {
      const int node = (slot % 8) / 2;
      std::vector<int> counts(node + 2, 0);
      for (const auto& a : pool) ++counts[a.inputs[slot]];
      inputs[slot] = ModalChoice(counts);
    }
    // Repair duplicated inputs within a node.
    for (int slot = 1; slot < input_slots; slot += 2) {
      if (inputs[slot] != inputs[slot - 1]) continue;
      const int node = (slot % 8) / 2;
      int v = static_cast<int>(rng_.NextBelow(node + 1));
      if (v >= inputs[slot - 1]) ++v;
      inputs[slot] = v;
    }
    return MakeArchitecture(space_, std::move(ops), std::move(inputs));
  }

  int ModalChoice(const std::vector<int>& counts) {
    const int max_count = *std::max_element(counts.begin(), counts.end());
    std::vector<int> modal;
    for (size_t v = 0; v < counts.size(); ++v) {
      if (counts[v] == max_count) modal.push_back(static_cast<int>(v));
    }
    if (modal.size() == 1) return modal.front();
    return modal[rng_.NextBelow(modal.size())];
  }

  const SpaceDescriptor& space_;
  EvaluatorHandle evaluator_;
  SeededRng rng_;
};

class RandomValidAgent : public ScriptedAgentBase {
 public:
  using ScriptedAgentBase::ScriptedAgentBase;

  std::string kind() const override { return "random_valid"; }

  std::string Complete(const Prompt& prompt, const LlmParams&) override {
    if (prompt.template_id == TemplateId::kC) {
      return "Strategy: explore a uniformly random variation of the "
             "architecture to probe the space.";
    }
    return EmitArchitecture(RandomArchitecture(space_, rng_),
                            "Trying a fresh random candidate.");
  }
};

class GreedyMutationAgent : public ScriptedAgentBase {
 public:
  using ScriptedAgentBase::ScriptedAgentBase;

  std::string kind() const override { return "greedy_mutation"; }

  std::string Complete(const Prompt& prompt, const LlmParams&) override {
    if (prompt.template_id == TemplateId::kC) {
      return StrategyFor(PromptArchitecture(prompt));
    }
    Architecture anchor =
        prompt.template_id == TemplateId::kE
            ? BestScoringExemplar(PromptExemplars(prompt))
            : PromptArchitecture(prompt);
    return EmitArchitecture(BestNeighbor(anchor),
                            "Applying the single most beneficial edit.");
  }

 private:
  std::string StrategyFor(const Architecture& arch) const {
    const Architecture best = BestNeighbor(arch);
    for (int slot = 0; slot < space_.slot_count; ++slot) {
      if (best.ops[slot] != arch.ops[slot]) {
        return "Change slot " + std::to_string(slot) + " from " +
               space_.operator_names[arch.ops[slot]] + " to " +
               space_.operator_names[best.ops[slot]] + ".";
      }
    }
    for (size_t slot = 0; slot < arch.inputs.size(); ++slot) {
      if (best.inputs[slot] != arch.inputs[slot]) {
        return "Rewire input slot " + std::to_string(slot) + " to node " +
               std::to_string(best.inputs[slot]) + ".";
      }
    }
    return "No single edit improves the score; keep the architecture.";
  }

  Architecture BestScoringExemplar(const std::vector<Architecture>& pool) {
    if (pool.empty()) {
      throw SekiError(ErrorCode::kNoArchitectureFound,
                      "prompt carries no exemplar encodings");
    }
    const Architecture* best = &pool.front();
    double best_score = evaluator_->Evaluate(*best).oriented_value;
    for (const Architecture& a : pool) {
      const double s = evaluator_->Evaluate(a).oriented_value;
      if (s > best_score) {
        best_score = s;
        best = &a;
      }
    }
    return *best;
  }
};

class MajorityRecombinationAgent : public ScriptedAgentBase {
 public:
  using ScriptedAgentBase::ScriptedAgentBase;

  std::string kind() const override { return "majority_recombination"; }

  std::string Complete(const Prompt& prompt, const LlmParams&) override {
    if (prompt.template_id == TemplateId::kC) {
      return "Strategy: recombine the strongest shared design patterns.";
    }
    const auto pool = PromptExemplars(prompt);
    if (pool.empty()) {
      throw SekiError(ErrorCode::kNoArchitectureFound,
                      "prompt carries no architecture encodings");
    }
    if (prompt.template_id == TemplateId::kD) {
      // No exemplar set to recombine; keep the anchor unchanged.
      return EmitArchitecture(pool.back(), "Keeping the given architecture.");
    }
    return EmitArchitecture(MajorityArchitecture(pool),
                            "Combining the dominant operator per slot.");
  }
};

class NullAgent : public ScriptedAgentBase {
 public:
  using ScriptedAgentBase::ScriptedAgentBase;

  std::string kind() const override { return "null"; }

  std::string Complete(const Prompt&, const LlmParams&) override {
    return "I recommend more convolutions.";
  }
};

// greedy_mutation on C/D, majority_recombination on E.
class SekiMixAgent : public ScriptedAgentBase {
 public:
  SekiMixAgent(const SpaceDescriptor& space, EvaluatorHandle evaluator,
               SeededRng rng)
      : ScriptedAgentBase(space, evaluator, rng),
        greedy_(space, evaluator, rng.Substream("greedy")),
        majority_(space, evaluator, rng.Substream("majority")) {}

  std::string kind() const override { return "seki_mix"; }

  std::string Complete(const Prompt& prompt, const LlmParams& params) override {
    if (prompt.template_id == TemplateId::kE) {
      return majority_.Complete(prompt, params);
    }
    return greedy_.Complete(prompt, params);
  }

 private:
  GreedyMutationAgent greedy_;
  MajorityRecombinationAgent majority_;
};

// ---------------------------------------------------------------------------
// HTTP chat backend

struct ParsedUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

ParsedUrl SplitUrl(const std::string& url) {
  const size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw SekiError(ErrorCode::kConfigError,
                    "endpoint URL needs a scheme: " + url);
  }
  const size_t path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) {
    return {url, "/v1/chat/completions"};
  }
  return {url.substr(0, path_start), url.substr(path_start)};
}

class HttpChatBackend : public LlmBackend {
 public:
  explicit HttpChatBackend(const std::string& endpoint_url)
      : url_(SplitUrl(endpoint_url)) {}

  bool replayable() const override { return false; }
  std::string kind() const override { return "http"; }

  std::string Complete(const Prompt& prompt, const LlmParams& params) override {
    json body;
    body["model"] = params.model_name;
    body["temperature"] = params.temperature;
    body["max_tokens"] = params.max_tokens;
    body["messages"] = json::array();
    for (const auto& msg : prompt.messages) {
      body["messages"].push_back(
          {{"role", msg.role == Role::kSystem ? "system" : "user"},
           {"content", msg.text}});
    }
    const std::string payload = body.dump();

    std::string last_error = "no attempt made";
    for (int attempt = 0; attempt <= params.max_retries; ++attempt) {
      if (attempt > 0) {
        std::this_thread::sleep_for(std::chrono::milliseconds(
            params.backoff_base_ms * (1LL << (attempt - 1))));
      }
      httplib::Client client(url_.origin);
      client.set_connection_timeout(0, params.timeout_ms * 1000LL);
      client.set_read_timeout(params.timeout_ms / 1000,
                              (params.timeout_ms % 1000) * 1000);
      httplib::Headers headers;
      if (const char* key = std::getenv("SEKI_LLM_API_KEY")) {
        headers.emplace("Authorization", std::string("Bearer ") + key);
      }
      auto res = client.Post(url_.path, headers, payload, "application/json");
      if (!res) {
        last_error = "transport: " + httplib::to_string(res.error());
        continue;  // connect failure / timeout: transient
      }
      if (res->status == 429 || res->status >= 500) {
        last_error = "status " + std::to_string(res->status) + ": " +
                     res->body.substr(0, 200);
        continue;
      }
      if (res->status != 200) {
        throw SekiError(ErrorCode::kEndpointError,
                        "status " + std::to_string(res->status) + ": " +
                            res->body.substr(0, 200));
      }
      return ExtractContent(res->body);
    }
    throw SekiError(ErrorCode::kRetriesExhausted,
                    std::to_string(params.max_retries + 1) +
                        " attempts failed; last: " + last_error);
  }

 private:
  static std::string ExtractContent(const std::string& body) {
    json parsed = json::parse(body, nullptr, false);
    if (parsed.is_discarded() || !parsed.contains("choices") ||
        parsed["choices"].empty()) {
      throw SekiError(ErrorCode::kEndpointError,
                      "response is not a chat completion: " +
                          body.substr(0, 200));
    }
    return parsed["choices"][0]["message"]["content"].get<std::string>();
  }

  ParsedUrl url_;
};

}  // namespace

ScriptedKind ScriptedKindFromName(const std::string& name) {
  if (name == "random" || name == "random_valid") {
    return ScriptedKind::kRandomValid;
  }
  if (name == "greedy" || name == "greedy_mutation") {
    return ScriptedKind::kGreedyMutation;
  }
  if (name == "majority" || name == "majority_recombination") {
    return ScriptedKind::kMajorityRecombination;
  }
  if (name == "seki" || name == "seki_mix") return ScriptedKind::kSekiMix;
  if (name == "null") return ScriptedKind::kNull;
  throw SekiError(ErrorCode::kConfigError,
                  "unknown scripted agent '" + name + "'");
}

const char* ScriptedKindName(ScriptedKind kind) {
  switch (kind) {
    case ScriptedKind::kRandomValid:
      return "random_valid";
    case ScriptedKind::kGreedyMutation:
      return "greedy_mutation";
    case ScriptedKind::kMajorityRecombination:
      return "majority_recombination";
    case ScriptedKind::kSekiMix:
      return "seki_mix";
    case ScriptedKind::kNull:
      return "null";
  }
  return "unknown";
}

std::unique_ptr<LlmBackend> MakeScriptedAgent(ScriptedKind kind,
                                              const SpaceDescriptor& space,
                                              EvaluatorHandle evaluator,
                                              SeededRng rng) {
  const bool needs_evaluator = kind == ScriptedKind::kGreedyMutation ||
                               kind == ScriptedKind::kSekiMix;
  if (needs_evaluator && !evaluator) {
    throw SekiError(ErrorCode::kMissingEvaluator,
                    std::string(ScriptedKindName(kind)) +
                        " needs an evaluator handle");
  }
  switch (kind) {
    case ScriptedKind::kRandomValid:
      return std::make_unique<RandomValidAgent>(space, evaluator, rng);
    case ScriptedKind::kGreedyMutation:
      return std::make_unique<GreedyMutationAgent>(space, evaluator, rng);
    case ScriptedKind::kMajorityRecombination:
      return std::make_unique<MajorityRecombinationAgent>(space, evaluator,
                                                          rng);
    case ScriptedKind::kSekiMix:
      return std::make_unique<SekiMixAgent>(space, evaluator, rng);
    case ScriptedKind::kNull:
      return std::make_unique<NullAgent>(space, evaluator, rng);
  }
  throw SekiError(ErrorCode::kConfigError, "bad scripted kind");
}

std::unique_ptr<LlmBackend> MakeHttpBackend(const std::string& endpoint_url) {
  return std::make_unique<HttpChatBackend>(endpoint_url);
}

}  // namespace seki
