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

// Structured hex-grid generator and a brute-force boundary-face enumerator
// used as the counting oracle for surface extraction. The enumerator derives
// faces from grid coordinates directly and never touches the library's face
// tables or pipeline.

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <set>
#include <vector>

#include "fea2vr/listing_parser.hpp"

namespace fea2vr::test_support {

struct HexGrid {
  int n = 1;  // cells per axis
  std::vector<listing::NodeRecord> nodes;
  std::vector<listing::ElementRecord> elements;

  NodeId node_id(int i, int j, int k) const { return 1 + i + (n + 1) * (j + (n + 1) * k); }
};

/// n^3 unit cubes spanning [0,n]^3. Element local order: bottom quad
/// counterclockwise seen from +z, then the top quad above it. TYP = 1.
inline HexGrid make_hex_grid(int n) {
  HexGrid grid;
  grid.n = n;
  for (int k = 0; k <= n; ++k)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n; ++i)
        grid.nodes.push_back({grid.node_id(i, j, k), {double(i), double(j), double(k)}});
  ElementId next = 1;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        listing::ElementRecord e;
        e.id = next++;
        e.material = 1;
        e.type_ref = 1;
        e.real_const = 1;
        e.section = 1;
        e.node_ids = {grid.node_id(i, j, k),         grid.node_id(i + 1, j, k),
                      grid.node_id(i + 1, j + 1, k), grid.node_id(i, j + 1, k),
                      grid.node_id(i, j, k + 1),     grid.node_id(i + 1, j, k + 1),
                      grid.node_id(i + 1, j + 1, k + 1), grid.node_id(i, j + 1, k + 1)};
        grid.elements.push_back(std::move(e));
      }
  return grid;
}

/// Nodes with at least one coordinate on the grid boundary.
inline std::set<NodeId> boundary_nodes(const HexGrid& grid) {
  std::set<NodeId> out;
  for (int k = 0; k <= grid.n; ++k)
    for (int j = 0; j <= grid.n; ++j)
      for (int i = 0; i <= grid.n; ++i) {
        auto on = [&](int c) { return c == 0 || c == grid.n; };
        if (on(i) || on(j) || on(k)) out.insert(grid.node_id(i, j, k));
      }
  return out;
}

struct FaceCount {
  std::size_t boundary_faces = 0;
  std::set<NodeId> boundary_face_nodes;
  std::set<std::set<NodeId>> boundary_face_sets;
  std::size_t all_faces_with_multiplicity = 0;
};

/// Enumerates the 6 axis-aligned faces of every cell as node-id sets and
/// keeps the ones owned by exactly one cell.
inline FaceCount enumerate_boundary_faces(const HexGrid& grid) {
  std::map<std::set<NodeId>, int> owners;
  const int n = grid.n;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const int lo[3] = {i, j, k};
        for (int axis = 0; axis < 3; ++axis) {
          for (int side = 0; side < 2; ++side) {
            std::set<NodeId> face;
            for (int a = 0; a < 2; ++a)
              for (int b = 0; b < 2; ++b) {
                int c[3];
                c[axis] = lo[axis] + side;
                c[(axis + 1) % 3] = lo[(axis + 1) % 3] + a;
                c[(axis + 2) % 3] = lo[(axis + 2) % 3] + b;
                face.insert(grid.node_id(c[0], c[1], c[2]));
              }
            ++owners[face];
          }
        }
      }
  FaceCount out;
  for (const auto& [face, count] : owners) {
    out.all_faces_with_multiplicity += static_cast<std::size_t>(count);
    if (count == 1) {
      ++out.boundary_faces;
      out.boundary_face_nodes.insert(face.begin(), face.end());
      out.boundary_face_sets.insert(face);
    }
  }
  return out;
}

}  // namespace fea2vr::test_support
