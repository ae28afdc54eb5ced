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

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fea2vr/types.hpp"

namespace fea2vr {

using Triangle = std::array<std::uint32_t, 3>;

/// Per-vertex result values. A vertex without a value holds NaN (only when
/// missing values were explicitly allowed); min and max cover finite values.
struct ScalarField {
  std::string name;
  std::vector<double> values;
  double min = 0.0;
  double max = 0.0;
  std::optional<std::string> units;

  friend bool operator==(const ScalarField&, const ScalarField&) = default;
};

/// Viewer-ready triangle mesh. Vertex v came from solver node node_id_map[v].
struct VrMesh {
  std::vector<Vec3> vertices;
  std::vector<Triangle> triangles;
  std::vector<Vec3> normals;
  std::vector<NodeId> node_id_map;
  std::vector<ScalarField> fields;

  const ScalarField* field(const std::string& name) const {
    for (const auto& f : fields) {
      if (f.name == name) return &f;
    }
    return nullptr;
  }

  friend bool operator==(const VrMesh&, const VrMesh&) = default;
};

/// Accounting for each conversion stage.
struct ConversionReport {
  std::size_t input_nodes = 0;
  std::size_t surface_nodes = 0;  // surface ids present in the node list
  std::size_t excluded_nodes = 0;
  std::size_t retained_nodes = 0;
  std::size_t input_elements = 0;
  std::map<std::string, std::size_t> elements_per_class;
  std::size_t unsupported_elements = 0;
  std::size_t dropped_empty_elements = 0;
  std::size_t emitted_triangles = 0;
  std::size_t duplicate_face_triangles_removed = 0;
  std::size_t degenerate_triangles = 0;
  std::size_t degenerate_triangles_removed = 0;
  std::size_t orphan_vertices_removed = 0;
  std::size_t vertices = 0;
  std::size_t triangles = 0;
  std::size_t fallback_normals = 0;
  bool optimized = false;

  friend bool operator==(const ConversionReport&, const ConversionReport&) = default;
};

}  // namespace fea2vr
