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

// Splits one classified element into triangles over original node ids.
// Volume elements contribute only faces whose nodes are all kept by the
// element's node map; shells contribute their surviving nodes.

#include <algorithm>
#include <array>
#include <cstddef>
#include <vector>

#include "fea2vr/element_model.hpp"

namespace fea2vr {

struct IdTriangle {
  NodeId a = 0, b = 0, c = 0;
  ElementId source_element = 0;
  std::size_t face_index = 0;
  std::size_t tri_index = 0;

  std::array<NodeId, 3> ids() const { return {a, b, c}; }

  friend bool operator==(const IdTriangle&, const IdTriangle&) = default;
};

/// Hex faces as local indices. With locals 0-3 counterclockwise around the
/// bottom seen from above and 4-7 directly above them, each face winds
/// outward.
inline constexpr std::array<std::array<std::size_t, 4>, 6> kHexFaces = {{
    {0, 3, 2, 1},
    {4, 5, 6, 7},
    {0, 1, 5, 4},
    {1, 2, 6, 5},
    {2, 3, 7, 6},
    {3, 0, 4, 7},
}};

/// 10-node tet faces: three corners then the midsides of edges
/// (c0,c1), (c1,c2), (c2,c0). Corners I J K L are locals 0-3; midsides
/// IJ JK KI IL JL KL are locals 4-9.
inline constexpr std::array<std::array<std::size_t, 6>, 4> kTetFaces = {{
    {0, 1, 2, 4, 5, 6},
    {0, 3, 1, 7, 8, 4},
    {1, 3, 2, 8, 9, 5},
    {2, 3, 0, 9, 7, 6},
}};

inline std::array<IdTriangle, 2> split_quad(const std::array<NodeId, 4>& q,
                                            ElementId source = 0, std::size_t face = 0) {
  return {{{q[0], q[1], q[2], source, face, 0}, {q[0], q[2], q[3], source, face, 1}}};
}

inline std::vector<IdTriangle> triangulate_shell(const ClassifiedElement& element) {
  const auto& ids = element.record.node_ids;
  std::vector<NodeId> survivors;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (element.node_map.skipped(i)) continue;
    if (std::find(survivors.begin(), survivors.end(), ids[i]) == survivors.end()) {
      survivors.push_back(ids[i]);
    }
  }
  const ElementId source = element.record.id;
  if (survivors.size() == 3) {
    return {{survivors[0], survivors[1], survivors[2], source, 0, 0}};
  }
  if (survivors.size() == 4) {
    auto tris = split_quad({survivors[0], survivors[1], survivors[2], survivors[3]}, source);
    return {tris.begin(), tris.end()};
  }
  return {};
}

inline std::vector<IdTriangle> triangulate_hex(const ClassifiedElement& element) {
  const auto& ids = element.record.node_ids;
  std::vector<IdTriangle> out;
  for (std::size_t f = 0; f < kHexFaces.size(); ++f) {
    const auto& face = kHexFaces[f];
    if (std::any_of(face.begin(), face.end(),
                    [&](std::size_t local) { return element.node_map.skipped(local); })) {
      continue;
    }
    auto tris = split_quad({ids[face[0]], ids[face[1]], ids[face[2]], ids[face[3]]},
                           element.record.id, f);
    out.insert(out.end(), tris.begin(), tris.end());
  }
  return out;
}

inline std::vector<IdTriangle> triangulate_solid92(const ClassifiedElement& element) {
  const auto& ids = element.record.node_ids;
  const ElementId source = element.record.id;
  std::vector<IdTriangle> out;
  for (std::size_t f = 0; f < kTetFaces.size(); ++f) {
    const auto& face = kTetFaces[f];
    if (std::any_of(face.begin(), face.end(),
                    [&](std::size_t local) { return element.node_map.skipped(local); })) {
      continue;
    }
    const NodeId c0 = ids[face[0]], c1 = ids[face[1]], c2 = ids[face[2]];
    const NodeId m0 = ids[face[3]], m1 = ids[face[4]], m2 = ids[face[5]];
    out.push_back({c0, m0, m2, source, f, 0});
    out.push_back({m0, c1, m1, source, f, 1});
    out.push_back({m2, m1, c2, source, f, 2});
    out.push_back({m0, m1, m2, source, f, 3});
  }
  return out;
}

/// Dispatch on class. Triangles that would repeat a node id (collapsed
/// solid nodes) are not emitted.
inline std::vector<IdTriangle> triangulate(const ClassifiedElement& element) {
  std::vector<IdTriangle> tris;
  switch (element.cls) {
    case ElementClass::Shell: tris = triangulate_shell(element); break;
    case ElementClass::Hex8: tris = triangulate_hex(element); break;
    case ElementClass::Solid92: tris = triangulate_solid92(element); break;
    case ElementClass::Unsupported: break;
  }
  std::erase_if(tris, [](const IdTriangle& t) { return t.a == t.b || t.b == t.c || t.a == t.c; });
  return tris;
}

}  // namespace fea2vr
