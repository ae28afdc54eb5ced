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

// Readers for the plain-text listings a solver exports: node coordinates,
// element connectivity, the surface-node subset and per-node results.
//
// A listing is free-form text. Only "data lines" are interpreted; banners,
// column headers, page breaks and blank lines are skipped. A skipped line
// produces a warning only when one of its tokens starts with a digit, which
// is how a truncated or garbled data line usually looks.

#include <cctype>
#include <cstddef>
#include <istream>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fea2vr/error.hpp"
#include "fea2vr/types.hpp"

namespace fea2vr::listing {

struct NodeRecord {
  NodeId id = 0;
  Vec3 position{};

  friend bool operator==(const NodeRecord&, const NodeRecord&) = default;
};

struct ElementRecord {
  ElementId id = 0;
  std::int64_t material = 0;
  std::int64_t type_ref = 0;  // TYP column
  std::int64_t real_const = 0;
  std::int64_t esys = 0;
  std::int64_t section = 0;
  std::vector<NodeId> node_ids;  // listed order, repeats preserved

  friend bool operator==(const ElementRecord&, const ElementRecord&) = default;
};

struct ParseWarning {
  std::size_t line_number = 1;
  std::string reason;
};

template <typename Records>
struct Parsed {
  Records records;
  std::vector<ParseWarning> warnings;
};

using NodeListing = Parsed<std::vector<NodeRecord>>;
using ElementListing = Parsed<std::vector<ElementRecord>>;
using SurfaceListing = Parsed<std::set<NodeId>>;
using ResultListing = Parsed<std::map<NodeId, double>>;

namespace detail {

struct Line {
  std::size_t number;
  std::vector<std::string_view> tokens;
};

inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f';
}

inline std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

/// Splits on LF (CRLF handled by treating CR as whitespace). Strips a UTF-8
/// byte-order mark.
inline std::vector<Line> split_lines(std::string_view text) {
  constexpr std::string_view kBom = "\xEF\xBB\xBF";
  if (text.starts_with(kBom)) text.remove_prefix(kBom.size());
  std::vector<Line> lines;
  std::size_t number = 1;
  while (!text.empty()) {
    auto eol = text.find('\n');
    auto line = text.substr(0, eol);
    lines.push_back({number++, tokenize(line)});
    if (eol == std::string_view::npos) break;
    text.remove_prefix(eol + 1);
  }
  return lines;
}

inline bool has_digit_leading_token(const Line& line) {
  for (auto token : line.tokens) {
    if (std::isdigit(static_cast<unsigned char>(token.front()))) return true;
  }
  return false;
}

inline std::optional<NodeId> positive_id(std::string_view token) {
  auto value = fea2vr::detail::parse_integer(token);
  if (!value || *value < 1) return std::nullopt;
  return value;
}

inline bool all_integers(const Line& line) {
  for (auto token : line.tokens) {
    if (!fea2vr::detail::parse_integer(token)) return false;
  }
  return true;
}

inline void warn_if_digits(const Line& line, std::string_view what,
                           std::vector<ParseWarning>& warnings) {
  if (has_digit_leading_token(line)) {
    warnings.push_back({line.number, "skipped line: not a valid " + std::string(what)});
  }
}

}  // namespace detail

inline std::string read_text(std::istream& in) {
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

/// A data line is `ID X Y Z [extra columns...]`.
inline NodeListing parse_node_list(std::string_view text) {
  NodeListing out;
  std::unordered_map<NodeId, std::size_t> seen;
  for (const auto& line : detail::split_lines(text)) {
    if (line.tokens.empty()) continue;
    auto id = detail::positive_id(line.tokens.front());
    std::optional<double> xyz[3];
    if (id && line.tokens.size() >= 4) {
      for (int k = 0; k < 3; ++k) xyz[k] = fea2vr::detail::parse_real(line.tokens[k + 1]);
    }
    if (!id || !xyz[0] || !xyz[1] || !xyz[2]) {
      detail::warn_if_digits(line, "node record", out.warnings);
      continue;
    }
    auto [it, inserted] = seen.emplace(*id, line.number);
    if (!inserted) {
      throw Error(ErrorKind::Parse,
                  "duplicate node id " + std::to_string(*id) + " on lines " +
                      std::to_string(it->second) + " and " + std::to_string(line.number),
                  line.number);
    }
    out.records.push_back({*id, {*xyz[0], *xyz[1], *xyz[2]}});
  }
  return out;
}

/// A data line is `EL MAT TYP REL ESY SEC N1 N2 ...`, all integers. When
/// `expected_node_counts[TYP]` exceeds the nodes on the line, the following
/// all-integer lines are read as continuations until the count is met.
inline ElementListing parse_element_list(
    std::string_view text, const std::map<std::int64_t, std::size_t>& expected_node_counts = {}) {
  constexpr std::size_t kMetaColumns = 6;
  ElementListing out;
  std::unordered_map<ElementId, std::size_t> seen;
  const auto lines = detail::split_lines(text);

  auto node_ids_of = [](const detail::Line& line, std::size_t first,
                        std::vector<NodeId>& ids) -> bool {
    for (std::size_t k = first; k < line.tokens.size(); ++k) {
      auto id = detail::positive_id(line.tokens[k]);
      if (!id) return false;
      ids.push_back(*id);
    }
    return true;
  };

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& line = lines[i];
    if (line.tokens.empty()) continue;
    ElementRecord record;
    bool ok = line.tokens.size() > kMetaColumns && detail::all_integers(line);
    if (ok) {
      auto field = [&](std::size_t k) { return *fea2vr::detail::parse_integer(line.tokens[k]); };
      record.id = field(0);
      record.material = field(1);
      record.type_ref = field(2);
      record.real_const = field(3);
      record.esys = field(4);
      record.section = field(5);
      ok = record.id >= 1 && node_ids_of(line, kMetaColumns, record.node_ids);
    }
    if (!ok) {
      detail::warn_if_digits(line, "element record", out.warnings);
      continue;
    }

    std::size_t expected = 0;
    if (auto it = expected_node_counts.find(record.type_ref); it != expected_node_counts.end()) {
      expected = it->second;
    }
    while (record.node_ids.size() < expected) {
      ++i;
      while (i < lines.size() && lines[i].tokens.empty()) ++i;
      const std::size_t remaining = expected - record.node_ids.size();
      if (i == lines.size() || !detail::all_integers(lines[i]) ||
          lines[i].tokens.size() > remaining || !node_ids_of(lines[i], 0, record.node_ids)) {
        const std::size_t at = i < lines.size() ? lines[i].number : line.number;
        throw Error(ErrorKind::Parse,
                    "element " + std::to_string(record.id) + ": expected a continuation line with " +
                        std::to_string(remaining) + " more node id(s)",
                    at);
      }
    }

    auto [it, inserted] = seen.emplace(record.id, line.number);
    if (!inserted) {
      throw Error(ErrorKind::Parse,
                  "duplicate element id " + std::to_string(record.id) + " on lines " +
                      std::to_string(it->second) + " and " + std::to_string(line.number),
                  line.number);
    }
    out.records.push_back(std::move(record));
  }
  return out;
}

/// A data line is a node id optionally followed by reals (coordinates).
inline SurfaceListing parse_surface_node_list(std::string_view text) {
  SurfaceListing out;
  for (const auto& line : detail::split_lines(text)) {
    if (line.tokens.empty()) continue;
    auto id = detail::positive_id(line.tokens.front());
    bool ok = id.has_value();
    for (std::size_t k = 1; ok && k < line.tokens.size(); ++k) {
      ok = fea2vr::detail::parse_real(line.tokens[k]).has_value();
    }
    if (!ok) {
      detail::warn_if_digits(line, "surface node record", out.warnings);
      continue;
    }
    out.records.insert(*id);
  }
  return out;
}

/// A data line is `NODE V1 V2 ...`; the value is the `value_column`-th real
/// (1-based). A repeated node id replaces the earlier value.
inline ResultListing parse_result_list(std::string_view text, std::size_t value_column = 1) {
  if (value_column < 1) {
    throw Error(ErrorKind::Parse, "value column must be at least 1");
  }
  ResultListing out;
  for (const auto& line : detail::split_lines(text)) {
    if (line.tokens.empty()) continue;
    auto id = detail::positive_id(line.tokens.front());
    std::vector<double> values;
    bool ok = id.has_value() && line.tokens.size() >= 2;
    for (std::size_t k = 1; ok && k < line.tokens.size(); ++k) {
      auto value = fea2vr::detail::parse_real(line.tokens[k]);
      if (value) values.push_back(*value);
      ok = value.has_value();
    }
    if (!ok) {
      detail::warn_if_digits(line, "result record", out.warnings);
      continue;
    }
    if (values.size() < value_column) {
      throw Error(ErrorKind::Parse,
                  "value column " +
                      std::to_string(value_column) + " requested but only " +
                      std::to_string(values.size()) + " value(s) present",
                  line.number);
    }
    auto [it, inserted] = out.records.insert_or_assign(*id, values[value_column - 1]);
    if (!inserted) {
      out.warnings.push_back(
          {line.number, "node " + std::to_string(*id) + " listed again; later value kept"});
    }
  }
  return out;
}

// Canonical listing text. Each parser reads its writer's output back to
// identical records.

inline std::string format_node_list(std::span<const NodeRecord> nodes) {
  std::string out = "NODE X Y Z\n";
  for (const auto& node : nodes) {
    out += std::to_string(node.id);
    for (double c : node.position) out += ' ' + fea2vr::detail::format_real(c);
    out += '\n';
  }
  return out;
}

inline std::string format_element_list(std::span<const ElementRecord> elements) {
  std::string out = "EL MAT TYP REL ESY SEC NODES\n";
  for (const auto& e : elements) {
    for (auto v : {e.id, e.material, e.type_ref, e.real_const, e.esys, e.section}) {
      out += std::to_string(v) + ' ';
    }
    for (std::size_t k = 0; k < e.node_ids.size(); ++k) {
      out += std::to_string(e.node_ids[k]);
      out += k + 1 < e.node_ids.size() ? ' ' : '\n';
    }
  }
  return out;
}

inline std::string format_result_list(const std::map<NodeId, double>& values,
                                      std::string_view label = "VALUE") {
  std::string out = "NODE " + std::string(label) + "\n";
  for (const auto& [id, value] : values) {
    out += std::to_string(id) + ' ' + fea2vr::detail::format_real(value) + '\n';
  }
  return out;
}

}  // namespace fea2vr::listing
