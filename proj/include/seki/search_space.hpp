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

#ifndef SEKI_SEARCH_SPACE_HPP_
#define SEKI_SEARCH_SPACE_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "seki/rng.hpp"

namespace seki {

enum class SpaceId { kNas201, kTrans101, kDarts };

const char* SpaceIdName(SpaceId id);
SpaceId SpaceIdFromName(const std::string& name);

// Static description of one cell-based search space.
//
// NAS201 / Trans101 cells are 4-node DAGs: 6 operator-labelled edges
// (1<-0, 2<-0, 2<-1, 3<-0, 3<-1, 3<-2), one operator gene per edge.
// DARTS has two cells (normal, reduction); each cell has 4 nodes with two
// (operator, input) pairs per node, so 16 operator genes plus 16 input
// genes total.
struct SpaceDescriptor {
  SpaceId space_id;
  std::vector<std::string> operator_names;
  int slot_count;  // operator genes
  std::string topology;
  bool enumerable;
  std::string task_description;

  std::uint64_t Size() const;  // enumerable spaces only
};

const SpaceDescriptor& DescribeSpace(SpaceId id);

struct Architecture {
  SpaceId space_id;
  std::vector<int> ops;     // operator index per slot
  std::vector<int> inputs;  // DARTS only: input node per slot, empty otherwise
  std::string canonical_text;

  bool operator==(const Architecture& other) const {
    return space_id == other.space_id && ops == other.ops &&
           inputs == other.inputs;
  }
};

// Builds a validated Architecture from genes; computes the canonical text.
Architecture MakeArchitecture(const SpaceDescriptor& space,
                              std::vector<int> ops,
                              std::vector<int> inputs = {});

std::string RenderArchitecture(const Architecture& arch);

// Strict parse of a canonical encoding (whitespace-tolerant for DARTS).
Architecture ParseArchitecture(const SpaceDescriptor& space,
                               const std::string& text);

Architecture RandomArchitecture(const SpaceDescriptor& space, SeededRng& rng);

// Visits every architecture of an enumerable space in lexicographic gene
// order. Throws NotEnumerable for DARTS.
void EnumerateSpace(const SpaceDescriptor& space,
                    const std::function<void(const Architecture&)>& visit);

// All single-edit variants: one operator gene changed, or (DARTS) one input
// gene changed to another valid, distinct-from-sibling value.
std::vector<Architecture> Neighbors(const Architecture& arch);

// Locates the last well-formed canonical encoding inside raw model output.
Architecture ExtractArchitecture(const SpaceDescriptor& space,
                                 const std::string& llm_text);

// All well-formed encodings in order of appearance (exemplar echo parsing).
std::vector<Architecture> ExtractAllArchitectures(const SpaceDescriptor& space,
                                                  const std::string& llm_text);

}  // namespace seki

#endif  // SEKI_SEARCH_SPACE_HPP_
