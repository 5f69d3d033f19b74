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

#include "seki/search_space.hpp"

#include <algorithm>
#include <regex>
#include <sstream>

#include "seki/errors.hpp"

namespace seki {

namespace {

// NAS201/Trans101 edge list of the 4-node cell DAG: (target, predecessor)
// in canonical slot order.
constexpr int kCellEdges[6][2] = {{1, 0}, {2, 0}, {2, 1},
                                  {3, 0}, {3, 1}, {3, 2}};

constexpr int kDartsCells = 2;
constexpr int kDartsNodesPerCell = 4;
constexpr int kDartsSlotsPerCell = kDartsNodesPerCell * 2;
constexpr int kDartsSlots = kDartsCells * kDartsSlotsPerCell;  // 16

const SpaceDescriptor& Nas201Descriptor() {
  static const SpaceDescriptor d{
      SpaceId::kNas201,
      {"none", "skip_connect", "nor_conv_1x1", "nor_conv_3x3", "avg_pool_3x3"},
      6,
      "4-node DAG cell; one operator per edge; edges in order "
      "1<-0, 2<-0, 2<-1, 3<-0, 3<-1, 3<-2",
      true,
      "image classification on CIFAR-10: maximize test accuracy of the "
      "network built by stacking the searched cell"};
  return d;
}

const SpaceDescriptor& Trans101Descriptor() {
  static const SpaceDescriptor d{
      SpaceId::kTrans101,
      {"zero", "skip_connect", "conv_1x1", "conv_3x3"},
      6,
      "4-node DAG cell; one operator per edge; edges in order "
      "1<-0, 2<-0, 2<-1, 3<-0, 3<-1, 3<-2",
      true,
      "transfer-learning vision tasks (TransNAS-Bench-101 style): optimize "
      "the task metric of the network built from the searched cell"};
  return d;
}

const SpaceDescriptor& DartsDescriptor() {
  static const SpaceDescriptor d{
      SpaceId::kDarts,
      {"none", "max_pool_3x3", "avg_pool_3x3", "skip_connect", "sep_conv_3x3",
       "sep_conv_5x5", "dil_conv_3x3", "dil_conv_5x5"},
      kDartsSlots,
      "two cells (normal, reduction); each cell has 4 nodes; each node takes "
      "two (operator, input) pairs; inputs 0 and 1 are the cell input "
      "layers, 2..5 the prior intermediate nodes; a node's two inputs must "
      "be distinct and input index <= node position + 1",
      false,
      "image classification on CIFAR-10: maximize validation accuracy of "
      "the network assembled from the searched normal and reduction cells"};
  return d;
}

int OperatorIndex(const SpaceDescriptor& space, const std::string& label) {
  for (size_t i = 0; i < space.operator_names.size(); ++i) {
    if (space.operator_names[i] == label) return static_cast<int>(i);
  }
  throw SekiError(ErrorCode::kUnknownOperator,
                  "operator '" + label + "' is not in the " +
                      std::string(SpaceIdName(space.space_id)) +
                      " operator set");
}

void ValidateGenes(const SpaceDescriptor& space, const std::vector<int>& ops,
                   const std::vector<int>& inputs) {
  if (static_cast<int>(ops.size()) != space.slot_count) {
    throw SekiError(ErrorCode::kArityMismatch,
                    "expected " + std::to_string(space.slot_count) +
                        " operator slots, got " + std::to_string(ops.size()));
  }
  const int op_count = static_cast<int>(space.operator_names.size());
  for (int op : ops) {
    if (op < 0 || op >= op_count) {
      throw SekiError(ErrorCode::kUnknownOperator,
                      "operator index " + std::to_string(op) +
                          " out of range (have " + std::to_string(op_count) +
                          " operators)");
    }
  }
  if (space.space_id != SpaceId::kDarts) {
    if (!inputs.empty()) {
      throw SekiError(ErrorCode::kMalformedEncoding,
                      "input genes only exist in the DARTS space");
    }
    return;
  }
  if (static_cast<int>(inputs.size()) != kDartsSlots) {
    throw SekiError(ErrorCode::kArityMismatch,
                    "expected " + std::to_string(kDartsSlots) +
                        " input slots, got " + std::to_string(inputs.size()));
  }
  for (int cell = 0; cell < kDartsCells; ++cell) {
    for (int node = 0; node < kDartsNodesPerCell; ++node) {
      const int base = cell * kDartsSlotsPerCell + node * 2;
      const int a = inputs[base];
      const int b = inputs[base + 1];
      for (int v : {a, b}) {
        if (v < 0 || v > node + 1) {
          throw SekiError(ErrorCode::kInvalidInputIndex,
                          "node " + std::to_string(node) + " input " +
                              std::to_string(v) + " exceeds node position + 1");
        }
      }
      if (a == b) {
        throw SekiError(ErrorCode::kInvalidInputIndex,
                        "node " + std::to_string(node) +
                            " uses input " + std::to_string(a) + " twice");
      }
    }
  }
}

std::string RenderEdgeListCell(const SpaceDescriptor& space,
                               const std::vector<int>& ops) {
  std::ostringstream out;
  int slot = 0;
  for (int node = 1; node <= 3; ++node) {
    if (node > 1) out << "+";
    out << "|";
    for (int pred = 0; pred < node; ++pred, ++slot) {
      out << space.operator_names[ops[slot]] << "~" << pred << "|";
    }
  }
  return out.str();
}

std::string RenderDarts(const SpaceDescriptor& space,
                        const std::vector<int>& ops,
                        const std::vector<int>& inputs) {
  static const char* kCellNames[kDartsCells] = {"normal", "reduction"};
  std::ostringstream out;
  for (int cell = 0; cell < kDartsCells; ++cell) {
    if (cell > 0) out << " ";
    out << kCellNames[cell] << ": (";
    for (int node = 0; node < kDartsNodesPerCell; ++node) {
      const int base = cell * kDartsSlotsPerCell + node * 2;
      if (node > 0) out << ", ";
      out << "(" << space.operator_names[ops[base]] << "@" << inputs[base]
          << ", " << space.operator_names[ops[base + 1]] << "@"
          << inputs[base + 1] << ")";
    }
    out << ")";
  }
  return out.str();
}

// Splits a "|op~p|+|op~p|op~p|+|..." string into (label, pred) segments.
// Structural failures throw MalformedEncoding; wrong segment count throws
// ArityMismatch so callers can distinguish a missing edge from a typo.
std::vector<std::pair<std::string, int>> SplitEdgeListText(
    const std::string& text) {
  std::vector<std::pair<std::string, int>> segments;
  if (text.empty() || text.front() != '|' || text.back() != '|') {
    throw SekiError(ErrorCode::kMalformedEncoding,
                    "encoding must start and end with '|'");
  }
  size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] != '|') {
      throw SekiError(ErrorCode::kMalformedEncoding,
                      "expected '|' at position " + std::to_string(pos));
    }
    ++pos;
    if (pos >= text.size()) break;  // trailing '|'
    if (text[pos] == '+') {          // node group separator "|+|"
      ++pos;
      continue;
    }
    const size_t tilde = text.find('~', pos);
    const size_t bar = text.find('|', pos);
    if (tilde == std::string::npos || bar == std::string::npos || tilde > bar) {
      throw SekiError(ErrorCode::kMalformedEncoding,
                      "segment missing '~pred' near position " +
                          std::to_string(pos));
    }
    const std::string label = text.substr(pos, tilde - pos);
    const std::string pred_str = text.substr(tilde + 1, bar - tilde - 1);
    if (label.empty() || pred_str.empty() ||
        pred_str.find_first_not_of("0123456789") != std::string::npos) {
      throw SekiError(ErrorCode::kMalformedEncoding,
                      "bad segment '" + text.substr(pos, bar - pos) + "'");
    }
    segments.emplace_back(label, std::stoi(pred_str));
    pos = bar;  // next loop consumes this '|'
  }
  return segments;
}

Architecture ParseEdgeList(const SpaceDescriptor& space,
                           const std::string& text) {
  const auto segments = SplitEdgeListText(text);
  if (segments.size() != 6) {
    throw SekiError(ErrorCode::kArityMismatch,
                    "expected 6 edges, got " + std::to_string(segments.size()));
  }
  std::vector<int> ops(6);
  for (int slot = 0; slot < 6; ++slot) {
    const auto& [label, pred] = segments[slot];
    if (pred != kCellEdges[slot][1]) {
      throw SekiError(ErrorCode::kInvalidInputIndex,
                      "edge " + std::to_string(slot) + " must read from node " +
                          std::to_string(kCellEdges[slot][1]) + ", got " +
                          std::to_string(pred));
    }
    ops[slot] = OperatorIndex(space, label);
  }
  return MakeArchitecture(space, std::move(ops));
}

// DARTS pair "op@in"; leniency limited to whitespace.
const std::regex& DartsTextRegex() {
  static const std::regex re(
      R"(normal\s*:\s*\((\s*\(\s*[A-Za-z0-9_]+@\d\s*,\s*[A-Za-z0-9_]+@\d\s*\)\s*,?){4}\s*\)\s*reduction\s*:\s*\((\s*\(\s*[A-Za-z0-9_]+@\d\s*,\s*[A-Za-z0-9_]+@\d\s*\)\s*,?){4}\s*\))");
  return re;
}

Architecture ParseDarts(const SpaceDescriptor& space, const std::string& text) {
  std::smatch whole;
  if (!std::regex_match(text, whole, DartsTextRegex())) {
    // Distinguish a wrong pair count from general garbage.
    static const std::regex pair_re(R"(\(\s*[A-Za-z0-9_]+@\d\s*,\s*[A-Za-z0-9_]+@\d\s*\))");
    const auto pairs = std::distance(
        std::sregex_iterator(text.begin(), text.end(), pair_re),
        std::sregex_iterator());
    if (pairs > 0 && pairs != kDartsSlots / 2) {
      throw SekiError(ErrorCode::kArityMismatch,
                      "expected 8 (op@in, op@in) node entries, got " +
                          std::to_string(pairs));
    }
    throw SekiError(ErrorCode::kMalformedEncoding,
                    "not a DARTS genotype encoding");
  }
  static const std::regex gene_re(R"(([A-Za-z0-9_]+)@(\d))");
  std::vector<int> ops, inputs;
  for (std::sregex_iterator it(text.begin(), text.end(), gene_re), end;
       it != end; ++it) {
    ops.push_back(OperatorIndex(space, (*it)[1].str()));
    inputs.push_back(std::stoi((*it)[2].str()));
  }
  return MakeArchitecture(space, std::move(ops), std::move(inputs));
}

const std::regex& EdgeListBlockRegex() {
  static const std::regex re(
      R"(\|[A-Za-z0-9_]+~0\|\+\|[A-Za-z0-9_]+~0\|[A-Za-z0-9_]+~1\|\+\|[A-Za-z0-9_]+~0\|[A-Za-z0-9_]+~1\|[A-Za-z0-9_]+~2\|)");
  return re;
}

const std::regex& BlockRegexFor(SpaceId id) {
  return id == SpaceId::kDarts ? DartsTextRegex() : EdgeListBlockRegex();
}

}  // namespace

const char* SpaceIdName(SpaceId id) {
  switch (id) {
    case SpaceId::kNas201:
      return "nas201";
    case SpaceId::kTrans101:
      return "trans101";
    case SpaceId::kDarts:
      return "darts";
  }
  return "unknown";
}

SpaceId SpaceIdFromName(const std::string& name) {
  if (name == "nas201") return SpaceId::kNas201;
  if (name == "trans101") return SpaceId::kTrans101;
  if (name == "darts") return SpaceId::kDarts;
  throw SekiError(ErrorCode::kConfigError, "unknown space '" + name + "'");
}

std::uint64_t SpaceDescriptor::Size() const {
  if (!enumerable) {
    throw SekiError(ErrorCode::kNotEnumerable,
                    std::string(SpaceIdName(space_id)) + " is not enumerable");
  }
  std::uint64_t size = 1;
  for (int i = 0; i < slot_count; ++i) size *= operator_names.size();
  return size;
}

const SpaceDescriptor& DescribeSpace(SpaceId id) {
  switch (id) {
    case SpaceId::kNas201:
      return Nas201Descriptor();
    case SpaceId::kTrans101:
      return Trans101Descriptor();
    case SpaceId::kDarts:
      return DartsDescriptor();
  }
  throw SekiError(ErrorCode::kConfigError, "bad space id");
}

Architecture MakeArchitecture(const SpaceDescriptor& space,
                              std::vector<int> ops, std::vector<int> inputs) {
  ValidateGenes(space, ops, inputs);
  Architecture arch{space.space_id, std::move(ops), std::move(inputs), ""};
  arch.canonical_text =
      space.space_id == SpaceId::kDarts
          ? RenderDarts(space, arch.ops, arch.inputs)
          : RenderEdgeListCell(space, arch.ops);
  return arch;
}

std::string RenderArchitecture(const Architecture& arch) {
  return arch.canonical_text;
}

Architecture ParseArchitecture(const SpaceDescriptor& space,
                               const std::string& text) {
  if (space.space_id == SpaceId::kDarts) return ParseDarts(space, text);
  return ParseEdgeList(space, text);
}

Architecture RandomArchitecture(const SpaceDescriptor& space, SeededRng& rng) {
  const int op_count = static_cast<int>(space.operator_names.size());
  std::vector<int> ops(space.slot_count);
  for (int& op : ops) op = static_cast<int>(rng.NextBelow(op_count));
  if (space.space_id != SpaceId::kDarts) {
    return MakeArchitecture(space, std::move(ops));
  }
  std::vector<int> inputs(kDartsSlots);
  for (int cell = 0; cell < kDartsCells; ++cell) {
    for (int node = 0; node < kDartsNodesPerCell; ++node) {
      const int base = cell * kDartsSlotsPerCell + node * 2;
      const int choices = node + 2;  // inputs 0 .. node+1
      const int a = static_cast<int>(rng.NextBelow(choices));
      int b = static_cast<int>(rng.NextBelow(choices - 1));
      if (b >= a) ++b;  // distinct from a, still uniform
      inputs[base] = a;
      inputs[base + 1] = b;
    }
  }
  return MakeArchitecture(space, std::move(ops), std::move(inputs));
}

void EnumerateSpace(const SpaceDescriptor& space,
                    const std::function<void(const Architecture&)>& visit) {
  if (!space.enumerable) {
    throw SekiError(ErrorCode::kNotEnumerable,
                    std::string(SpaceIdName(space.space_id)) +
                        " is not enumerable");
  }
  const int op_count = static_cast<int>(space.operator_names.size());
  std::vector<int> ops(space.slot_count, 0);
  for (;;) {
    visit(MakeArchitecture(space, ops));
    // Lexicographic increment: slot 0 is the most significant digit.
    int slot = space.slot_count - 1;
    while (slot >= 0 && ops[slot] == op_count - 1) ops[slot--] = 0;
    if (slot < 0) return;
    ++ops[slot];
  }
}

std::vector<Architecture> Neighbors(const Architecture& arch) {
  const SpaceDescriptor& space = DescribeSpace(arch.space_id);
  const int op_count = static_cast<int>(space.operator_names.size());
  std::vector<Architecture> result;
  for (int slot = 0; slot < space.slot_count; ++slot) {
    for (int op = 0; op < op_count; ++op) {
      if (op == arch.ops[slot]) continue;
      std::vector<int> ops = arch.ops;
      ops[slot] = op;
      result.push_back(MakeArchitecture(space, std::move(ops), arch.inputs));
    }
  }
  if (arch.space_id == SpaceId::kDarts) {
    for (int slot = 0; slot < kDartsSlots; ++slot) {
      const int cell_slot = slot % kDartsSlotsPerCell;
      const int node = cell_slot / 2;
      const int sibling = (slot % 2 == 0) ? slot + 1 : slot - 1;
      for (int v = 0; v <= node + 1; ++v) {
        if (v == arch.inputs[slot] || v == arch.inputs[sibling]) continue;
        std::vector<int> inputs = arch.inputs;
        inputs[slot] = v;
        result.push_back(MakeArchitecture(space, arch.ops, std::move(inputs)));
      }
    }
  }
  return result;
}

std::vector<Architecture> ExtractAllArchitectures(
    const SpaceDescriptor& space, const std::string& llm_text) {
  std::vector<Architecture> found;
  const std::regex& re = BlockRegexFor(space.space_id);
  for (std::sregex_iterator it(llm_text.begin(), llm_text.end(), re), end;
       it != end; ++it) {
    try {
      found.push_back(ParseArchitecture(space, it->str()));
    } catch (const SekiError&) {
      // Structurally matched but semantically invalid (e.g. unknown
      // operator): skipped here, surfaced by ExtractArchitecture.
    }
  }
  return found;
}

Architecture ExtractArchitecture(const SpaceDescriptor& space,
                                 const std::string& llm_text) {
  const std::regex& re = BlockRegexFor(space.space_id);
  std::string last_block;
  for (std::sregex_iterator it(llm_text.begin(), llm_text.end(), re), end;
       it != end; ++it) {
    last_block = it->str();
  }
  if (last_block.empty()) {
    throw SekiError(ErrorCode::kNoArchitectureFound,
                    "no canonical architecture encoding in model output");
  }
  return ParseArchitecture(space, last_block);
}

}  // namespace seki
