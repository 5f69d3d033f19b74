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

#include "seki/prompt.hpp"

#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>

#include "seki/errors.hpp"
#include "seki/rng.hpp"

namespace seki {

namespace {

constexpr char kSystemText[] =
    "You are an expert neural architecture designer. You reason about "
    "cell-based architecture encodings and always finish your answer with "
    "the requested encoding on its own line.";

constexpr char kDefaultC[] =
    "Task: {TASK}\n"
    "\n"
    "Search space:\n"
    "{SPACE_DESC}\n"
    "\n"
    "Current architecture:\n"
    "{ARCH}\n"
    "\n"
    "Its evaluation score is {SCORE}.\n"
    "\n"
    "Analyze the potential weaknesses of this architecture for the task "
    "above and propose one concrete optimization strategy to improve it. "
    "Describe the strategy in plain text; do not output a new architecture "
    "yet.";

constexpr char kDefaultD[] =
    "Current architecture:\n"
    "{ARCH}\n"
    "\n"
    "Optimization strategy:\n"
    "{STRATEGY}\n"
    "\n"
    "Apply this strategy to the current architecture and output exactly one "
    "new architecture. Reply with the new architecture in the canonical "
    "encoding, using the same grammar as the current architecture above, on "
    "the last line of your answer.";

constexpr char kDefaultE[] =
    "Task: {TASK}\n"
    "\n"
    "Search space:\n"
    "{SPACE_DESC}\n"
    "\n"
    "Here are high-performing architectures found so far, with their "
    "scores:\n"
    "{EXEMPLARS}\n"
    "\n"
    "Study these examples, extract the design patterns they share, and "
    "output one NEW architecture that follows those patterns but is not "
    "identical to any example. Reply with the new architecture in the same "
    "canonical encoding on the last line of your answer.";

std::string ReplaceAll(std::string text, const std::string& placeholder,
                       const std::string& value) {
  size_t pos = 0;
  while ((pos = text.find(placeholder, pos)) != std::string::npos) {
    text.replace(pos, placeholder.size(), value);
    pos += value.size();
  }
  return text;
}

void CheckNoResidualPlaceholders(const std::string& text, TemplateId id) {
  static const std::regex marker(R"(\{[A-Z_]+\})");
  std::smatch m;
  if (std::regex_search(text, m, marker)) {
    throw SekiError(ErrorCode::kConfigError,
                    std::string("template ") + TemplateIdName(id) +
                        " left placeholder " + m.str() + " unresolved");
  }
}

std::string SpaceDescriptionText(const SpaceDescriptor& space) {
  std::ostringstream out;
  out << "Space: " << SpaceIdName(space.space_id) << "\n";
  out << "Operators: ";
  for (size_t i = 0; i < space.operator_names.size(); ++i) {
    if (i) out << ", ";
    out << space.operator_names[i];
  }
  out << "\nTopology: " << space.topology << "\n";
  if (space.space_id == SpaceId::kDarts) {
    out << "Encoding grammar: normal: ((op@in, op@in), (op@in, op@in), "
           "(op@in, op@in), (op@in, op@in)) reduction: (same shape); "
           "'op' is an operator name, 'in' an input index.";
  } else {
    out << "Encoding grammar: |op~0|+|op~0|op~1|+|op~0|op~1|op~2| where each "
           "'op' is an operator name and ~p names the predecessor node.";
  }
  return out.str();
}

std::string DigestMessages(TemplateId id, const std::vector<Message>& msgs) {
  std::uint64_t h = Fnv1a64(TemplateIdName(id));
  for (const auto& msg : msgs) {
    h = SplitMix64(h ^ Fnv1a64(msg.role == Role::kSystem ? "system" : "user"));
    h = SplitMix64(h ^ Fnv1a64(msg.text));
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

Prompt FinishPrompt(TemplateId id, std::string body) {
  CheckNoResidualPlaceholders(body, id);
  Prompt prompt{id, {{Role::kSystem, kSystemText},
                     {Role::kUser, std::move(body)}}, ""};
  prompt.content_digest = DigestMessages(id, prompt.messages);
  return prompt;
}

std::string ReadTemplateFile(const std::string& path,
                             const std::string& fallback) {
  std::ifstream in(path);
  if (!in) return fallback;
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

const char* TemplateIdName(TemplateId id) {
  switch (id) {
    case TemplateId::kC:
      return "C";
    case TemplateId::kD:
      return "D";
    case TemplateId::kE:
      return "E";
  }
  return "?";
}

std::string Prompt::JoinedText() const {
  std::string out;
  for (const auto& msg : messages) {
    if (!out.empty()) out += "\n";
    out += msg.text;
  }
  return out;
}

TemplateSet TemplateSet::Defaults() {
  return TemplateSet{kDefaultC, kDefaultD, kDefaultE};
}

TemplateSet TemplateSet::FromDirectory(const std::string& dir) {
  TemplateSet t = Defaults();
  t.c_body = ReadTemplateFile(dir + "/prompt_c.txt", t.c_body);
  t.d_body = ReadTemplateFile(dir + "/prompt_d.txt", t.d_body);
  t.e_body = ReadTemplateFile(dir + "/prompt_e.txt", t.e_body);
  return t;
}

std::string FormatScore(const Fitness& fitness) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", fitness.raw_metric);
  return std::string(buf) + " (" + fitness.metric_name + ", " +
         (fitness.direction == Direction::kMaximize ? "higher is better"
                                                    : "lower is better") +
         ")";
}

Prompt RenderPromptC(const TemplateSet& templates, const std::string& task,
                     const SpaceDescriptor& space, const Architecture& arch,
                     const Fitness& score) {
  if (arch.space_id != space.space_id) {
    throw SekiError(ErrorCode::kSpaceMismatch,
                    "architecture does not belong to the prompt's space");
  }
  std::string body = templates.c_body;
  body = ReplaceAll(body, "{TASK}", task);
  body = ReplaceAll(body, "{SPACE_DESC}", SpaceDescriptionText(space));
  body = ReplaceAll(body, "{ARCH}", arch.canonical_text);
  body = ReplaceAll(body, "{SCORE}", FormatScore(score));
  return FinishPrompt(TemplateId::kC, std::move(body));
}

Prompt RenderPromptD(const TemplateSet& templates,
                     const OptimizationStrategy& strategy,
                     const Architecture& arch) {
  if (strategy.text.empty()) {
    throw SekiError(ErrorCode::kEmptyStrategy,
                    "optimization strategy text is empty");
  }
  std::string body = templates.d_body;
  body = ReplaceAll(body, "{ARCH}", arch.canonical_text);
  body = ReplaceAll(body, "{STRATEGY}", strategy.text);
  return FinishPrompt(TemplateId::kD, std::move(body));
}

Prompt RenderPromptE(const TemplateSet& templates,
                     const std::vector<ScoredEntry>& exemplars,
                     const std::string& task, const SpaceDescriptor& space) {
  if (exemplars.empty()) {
    throw SekiError(ErrorCode::kEmptyExemplarList,
                    "knowledge inspiration needs at least one exemplar");
  }
  std::ostringstream listing;
  for (size_t i = 0; i < exemplars.size(); ++i) {
    const ScoredEntry& e = exemplars[i];
    if (e.arch.space_id != space.space_id) {
      throw SekiError(ErrorCode::kSpaceMismatch,
                      "exemplar " + std::to_string(i) +
                          " does not belong to the prompt's space");
    }
    listing << (i + 1) << ". " << e.arch.canonical_text
            << "  score: " << FormatScore(e.fitness) << "\n";
  }
  std::string body = templates.e_body;
  body = ReplaceAll(body, "{TASK}", task);
  body = ReplaceAll(body, "{SPACE_DESC}", SpaceDescriptionText(space));
  body = ReplaceAll(body, "{EXEMPLARS}", listing.str());
  return FinishPrompt(TemplateId::kE, std::move(body));
}

Prompt WithExtraUserMessage(const Prompt& prompt, const std::string& text) {
  Prompt out = prompt;
  out.messages.push_back({Role::kUser, text});
  out.content_digest = DigestMessages(out.template_id, out.messages);
  return out;
}

}  // namespace seki
