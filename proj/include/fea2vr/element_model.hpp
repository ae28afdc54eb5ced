// Copyright 2026 The fea2vr Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>

#include "fea2vr/error.hpp"
#include "fea2vr/listing_parser.hpp"

namespace fea2vr {

enum class ElementClass { Shell, Hex8, Solid92, Unsupported };

inline std::string_view to_string(ElementClass cls) {
  switch (cls) {
    case ElementClass::Shell: return "shell";
    case ElementClass::Hex8: return "hex8";
    case ElementClass::Solid92: return "solid92";
    case ElementClass::Unsupported: return "unsupported";
  }
  return "unsupported";
}

inline std::optional<ElementClass> parse_element_class(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "shell") return ElementClass::Shell;
  if (lower == "hex8" || lower == "hex" || lower == "box") return ElementClass::Hex8;
  if (lower == "solid92" || lower == "tet10") return ElementClass::Solid92;
  if (lower == "unsupported" || lower == "skip") return ElementClass::Unsupported;
  return std::nullopt;
}

/// Largest node list a class can have; 0 for unsupported elements.
inline std::size_t max_node_count(ElementClass cls) {
  switch (cls) {
    case ElementClass::Shell: return 4;
    case ElementClass::Hex8: return 8;
    case ElementClass::Solid92: return 10;
    case ElementClass::Unsupported: return 0;
  }
  return 0;
}

/// TYP column value -> element class. TYP indexes a per-model element type
/// table, so the mapping is user supplied; unmapped values are Unsupported.
class TypeMapping {
 public:
  TypeMapping() = default;
  TypeMapping(std::initializer_list<std::pair<const std::int64_t, ElementClass>> entries)
      : entries_(entries) {}

  /// {1: Hex8, 2: Shell}
  static TypeMapping defaults() { return {{1, ElementClass::Hex8}, {2, ElementClass::Shell}}; }

  void set(std::int64_t type_ref, ElementClass cls) { entries_[type_ref] = cls; }

  ElementClass operator()(std::int64_t type_ref) const {
    auto it = entries_.find(type_ref);
    return it == entries_.end() ? ElementClass::Unsupported : it->second;
  }

  const std::map<std::int64_t, ElementClass>& entries() const { return entries_; }

  /// Input for `listing::parse_element_list` continuation handling.
  std::map<std::int64_t, std::size_t> expected_node_counts() const {
    std::map<std::int64_t, std::size_t> counts;
    for (const auto& [type_ref, cls] : entries_) counts[type_ref] = max_node_count(cls);
    return counts;
  }

  /// Parses `N=CLASS`, e.g. `3=solid92`.
  static std::pair<std::int64_t, ElementClass> parse_entry(std::string_view text) {
    auto eq = text.find('=');
    std::optional<std::int64_t> type_ref;
    std::optional<ElementClass> cls;
    if (eq != std::string_view::npos) {
      type_ref = fea2vr::detail::parse_integer(text.substr(0, eq));
      cls = parse_element_class(text.substr(eq + 1));
    }
    if (!type_ref || !cls) {
      throw Error(ErrorKind::Classification,
                  "bad element type mapping '" + std::string(text) +
                      "'; expected N=shell|hex8|solid92|unsupported");
    }
    return {*type_ref, *cls};
  }

 private:
  std::map<std::int64_t, ElementClass> entries_;
};

/// Bit i set means local node i+1 is skipped.
struct NodeMap {
  std::uint64_t bits = 0;
  std::size_t width = 0;

  static constexpr std::size_t kMaxWidth = 64;

  bool skipped(std::size_t local) const { return (bits >> local) & 1u; }

  friend bool operator==(const NodeMap&, const NodeMap&) = default;
};

struct ClassifiedElement {
  listing::ElementRecord record;
  ElementClass cls = ElementClass::Unsupported;
  std::size_t distinct_node_count = 0;
  NodeMap node_map;
};

inline ClassifiedElement classify(const listing::ElementRecord& record,
                                  const TypeMapping& mapping) {
  const auto fail = [&](const std::string& what) {
    throw Error(ErrorKind::Classification, "element " + std::to_string(record.id) + ": " + what);
  };
  const std::size_t width = record.node_ids.size();
  if (width == 0) fail("empty node list");
  if (width > NodeMap::kMaxWidth) {
    fail(std::to_string(width) + " nodes; at most " + std::to_string(NodeMap::kMaxWidth) +
         " supported");
  }

  ClassifiedElement out;
  out.record = record;
  out.cls = mapping(record.type_ref);
  out.distinct_node_count =
      std::set<NodeId>(record.node_ids.begin(), record.node_ids.end()).size();
  out.node_map = {0, width};

  switch (out.cls) {
    case ElementClass::Shell:
      if (out.distinct_node_count < 3) {
        fail("shell has " + std::to_string(out.distinct_node_count) + " distinct nodes, needs 3");
      }
      if (out.distinct_node_count > 4) {
        fail("shell has " + std::to_string(out.distinct_node_count) +
             " distinct nodes, at most 4 supported");
      }
      break;
    case ElementClass::Hex8:
      if (width != 8) fail("hex8 needs 8 nodes, got " + std::to_string(width));
      break;
    case ElementClass::Solid92:
      if (width != 10) fail("solid92 needs 10 nodes, got " + std::to_string(width));
      break;
    case ElementClass::Unsupported:
      break;
  }
  return out;
}

/// Marks every local node whose id is not in `surface`.
template <typename SurfaceSet>
NodeMap compute_node_map(const ClassifiedElement& element, const SurfaceSet& surface) {
  NodeMap map{0, element.record.node_ids.size()};
  for (std::size_t i = 0; i < map.width; ++i) {
    if (!surface.contains(element.record.node_ids[i])) map.bits |= std::uint64_t{1} << i;
  }
  return map;
}

}  // namespace fea2vr
