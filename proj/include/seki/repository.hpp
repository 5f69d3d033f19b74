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

#ifndef SEKI_REPOSITORY_HPP_
#define SEKI_REPOSITORY_HPP_

#include <map>
#include <string>
#include <vector>

#include "seki/evaluator.hpp"
#include "seki/rng.hpp"
#include "seki/search_space.hpp"

namespace seki {

enum class Phase { kInit, kSelfEvolution, kKnowledgeInspiration };

const char* PhaseName(Phase p);
Phase PhaseFromName(const std::string& name);

struct ScoredEntry {
  Architecture arch;
  Fitness fitness;
  int iteration;
  Phase phase;
};

struct InsertReceipt {
  bool was_duplicate;
};

// Knowledge repository: append-only record list plus a per-architecture
// index used for ranking. Duplicates stay in the record list (trace
// fidelity); the index keeps each architecture's best-scoring entry
// (ties -> earliest iteration).
class KnowledgeRepository {
 public:
  InsertReceipt Insert(const ScoredEntry& entry);

  // Up to k unique-architecture entries, oriented fitness descending;
  // ties -> earlier iteration, then lexicographic canonical text.
  std::vector<ScoredEntry> TopK(int k) const;

  // Uniform sample without replacement of min(xi, |top|) entries, in draw
  // order.
  static std::vector<ScoredEntry> SampleXi(const std::vector<ScoredEntry>& top,
                                           int xi, SeededRng& rng);

  ScoredEntry Best() const;

  const std::vector<ScoredEntry>& records() const { return records_; }
  size_t unique_count() const { return index_.size(); }
  bool empty() const { return records_.empty(); }

 private:
  std::vector<ScoredEntry> records_;
  std::map<std::string, ScoredEntry> index_;
};

}  // namespace seki

#endif  // SEKI_REPOSITORY_HPP_
