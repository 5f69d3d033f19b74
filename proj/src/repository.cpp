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

#include "seki/repository.hpp"

#include <algorithm>

#include "seki/errors.hpp"

namespace seki {

namespace {

// Ranking order shared by TopK and Best.
bool RanksAbove(const ScoredEntry& a, const ScoredEntry& b) {
  if (a.fitness.oriented_value != b.fitness.oriented_value) {
    return a.fitness.oriented_value > b.fitness.oriented_value;
  }
  if (a.iteration != b.iteration) return a.iteration < b.iteration;
  return a.arch.canonical_text < b.arch.canonical_text;
}

}  // namespace

const char* PhaseName(Phase p) {
  switch (p) {
    case Phase::kInit:
      return "init";
    case Phase::kSelfEvolution:
      return "self_evolution";
    case Phase::kKnowledgeInspiration:
      return "knowledge_inspiration";
  }
  return "unknown";
}

Phase PhaseFromName(const std::string& name) {
  if (name == "init") return Phase::kInit;
  if (name == "self_evolution") return Phase::kSelfEvolution;
  if (name == "knowledge_inspiration") return Phase::kKnowledgeInspiration;
  throw SekiError(ErrorCode::kTraceUnreadable, "unknown phase '" + name + "'");
}

InsertReceipt KnowledgeRepository::Insert(const ScoredEntry& entry) {
  const std::string& key = entry.arch.canonical_text;
  const auto it = index_.find(key);
  const bool was_duplicate = it != index_.end();
  if (!was_duplicate) {
    index_.emplace(key, entry);
  } else if (RanksAbove(entry, it->second)) {
    it->second = entry;
  }
  records_.push_back(entry);
  return InsertReceipt{was_duplicate};
}

std::vector<ScoredEntry> KnowledgeRepository::TopK(int k) const {
  std::vector<ScoredEntry> entries;
  entries.reserve(index_.size());
  for (const auto& [key, entry] : index_) entries.push_back(entry);
  std::sort(entries.begin(), entries.end(), RanksAbove);
  if (static_cast<int>(entries.size()) > k) entries.resize(k);
  return entries;
}

std::vector<ScoredEntry> KnowledgeRepository::SampleXi(
    const std::vector<ScoredEntry>& top, int xi, SeededRng& rng) {
  if (top.empty()) {
    throw SekiError(ErrorCode::kEmptyPool, "cannot sample from an empty pool");
  }
  if (xi < 1) {
    throw SekiError(ErrorCode::kConfigError, "xi must be >= 1");
  }
  std::vector<ScoredEntry> pool = top;
  const int take = std::min<int>(xi, static_cast<int>(pool.size()));
  std::vector<ScoredEntry> out;
  out.reserve(take);
  // Partial Fisher-Yates: each draw removes one element uniformly.
  for (int i = 0; i < take; ++i) {
    const size_t j = i + rng.NextBelow(pool.size() - i);
    std::swap(pool[i], pool[j]);
    out.push_back(pool[i]);
  }
  return out;
}

ScoredEntry KnowledgeRepository::Best() const {
  if (records_.empty()) {
    throw SekiError(ErrorCode::kEmptyRepository, "repository is empty");
  }
  const ScoredEntry* best = nullptr;
  for (const auto& [key, entry] : index_) {
    if (best == nullptr || RanksAbove(entry, *best)) best = &entry;
  }
  return *best;
}

}  // namespace seki
