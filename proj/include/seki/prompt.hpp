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

#ifndef SEKI_PROMPT_HPP_
#define SEKI_PROMPT_HPP_

#include <string>
#include <vector>

#include "seki/evaluator.hpp"
#include "seki/repository.hpp"
#include "seki/search_space.hpp"

namespace seki {

enum class TemplateId { kC, kD, kE };

const char* TemplateIdName(TemplateId id);

enum class Role { kSystem, kUser };

struct Message {
  Role role;
  std::string text;
};

struct Prompt {
  TemplateId template_id;
  std::vector<Message> messages;
  std::string content_digest;  // hex, stable over roles + texts

  std::string JoinedText() const;
};

struct OptimizationStrategy {
  std::string text;
  int source_iteration;
};

// The three template bodies. Defaults ship embedded; any of them can be
// replaced by a file with the same {NAME} placeholders.
struct TemplateSet {
  std::string c_body;
  std::string d_body;
  std::string e_body;

  static TemplateSet Defaults();
  // Loads <dir>/prompt_c.txt, prompt_d.txt, prompt_e.txt; missing files
  // keep their defaults.
  static TemplateSet FromDirectory(const std::string& dir);
};

// Analyze arch + score, propose an optimization strategy.
Prompt RenderPromptC(const TemplateSet& templates, const std::string& task,
                     const SpaceDescriptor& space, const Architecture& arch,
                     const Fitness& score);

// Apply a strategy to arch, emit exactly one new architecture.
Prompt RenderPromptD(const TemplateSet& templates,
                     const OptimizationStrategy& strategy,
                     const Architecture& arch);

// Synthesize a new architecture from scored exemplars.
Prompt RenderPromptE(const TemplateSet& templates,
                     const std::vector<ScoredEntry>& exemplars,
                     const std::string& task, const SpaceDescriptor& space);

// Score text as embedded in prompts: 2 decimals plus direction phrase.
std::string FormatScore(const Fitness& fitness);

// Copy of the prompt with one more user message (digest recomputed); used
// for format-reminder re-asks after a parse failure.
Prompt WithExtraUserMessage(const Prompt& prompt, const std::string& text);

}  // namespace seki

#endif  // SEKI_PROMPT_HPP_
