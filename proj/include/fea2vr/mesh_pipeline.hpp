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

// Nodes + elements (+ optional surface-node set) -> VrMesh.
//
// With a surface set every element gets a node map marking its non-surface
// nodes, and only faces built entirely from surface nodes survive. Without
// one all maps are zero and every face of every element is emitted, so faces
// shared by two elements appear twice.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "fea2vr/element_model.hpp"
#include "fea2vr/error.hpp"
#include "fea2vr/geometry.hpp"
#include "fea2vr/listing_parser.hpp"
#include "fea2vr/mesh.hpp"
#include "fea2vr/triangulation.hpp"

namespace fea2vr {

struct PipelineOptions {
  bool dedup_faces = false;      // drop faces whose node set occurs in more than one place
  bool drop_degenerate = false;  // drop zero-area triangles
  bool allow_empty = false;      // empty element list yields an empty mesh instead of an error
};

struct Conversion {
  VrMesh mesh;
  ConversionReport report;
};

struct Renumbering {
  std::unordered_map<NodeId, std::uint32_t> index;
  std::vector<NodeId> node_id_map;
};

/// Ascending original id -> 0, 1, 2, ...
inline Renumbering renumber(const std::set<NodeId>& used) {
  Renumbering out;
  out.node_id_map.assign(used.begin(), used.end());
  out.index.reserve(used.size());
  for (std::uint32_t v = 0; v < out.node_id_map.size(); ++v) out.index.emplace(out.node_id_map[v], v);
  return out;
}

enum class MissingValuePolicy { Error, Fill };

/// values[v] = raw[node_id_map[v]]. Entries for nodes that are not vertices
/// are dropped. Under MissingValuePolicy::Fill a vertex without a value gets
/// NaN and is left out of min/max.
inline ScalarField remap_field(std::string name, const std::map<NodeId, double>& raw,
                               std::span<const NodeId> node_id_map,
                               MissingValuePolicy policy = MissingValuePolicy::Error) {
  ScalarField field;
  field.name = std::move(name);
  field.values.reserve(node_id_map.size());
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (NodeId id : node_id_map) {
    auto it = raw.find(id);
    if (it == raw.end()) {
      if (policy == MissingValuePolicy::Error) {
        throw Error(ErrorKind::Pipeline,
                    "field " + field.name + ": missing result for node " + std::to_string(id));
      }
      field.values.push_back(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    field.values.push_back(it->second);
    lo = std::min(lo, it->second);
    hi = std::max(hi, it->second);
  }
  if (lo > hi) lo = hi = std::numeric_limits<double>::quiet_NaN();
  field.min = lo;
  field.max = hi;
  return field;
}

inline void add_field(VrMesh& mesh, ScalarField field) {
  if (mesh.field(field.name)) {
    throw Error(ErrorKind::Pipeline, "field " + field.name + " given twice");
  }
  mesh.fields.push_back(std::move(field));
}

inline Conversion build_mesh(std::span<const listing::NodeRecord> nodes,
                             std::span<const listing::ElementRecord> elements,
                             const TypeMapping& mapping,
                             const std::optional<std::set<NodeId>>& surface,
                             const PipelineOptions& options = {}) {
  Conversion out;
  auto& report = out.report;
  report.input_nodes = nodes.size();
  report.input_elements = elements.size();
  report.optimized = surface.has_value();
  for (auto cls : {ElementClass::Shell, ElementClass::Hex8, ElementClass::Solid92}) {
    report.elements_per_class[std::string(to_string(cls))] = 0;
  }

  std::unordered_map<NodeId, const listing::NodeRecord*> node_by_id;
  node_by_id.reserve(nodes.size());
  for (const auto& node : nodes) {
    if (!node_by_id.emplace(node.id, &node).second) {
      throw Error(ErrorKind::Pipeline, "duplicate node id " + std::to_string(node.id));
    }
  }

  if (elements.empty() && !options.allow_empty) {
    throw Error(ErrorKind::Pipeline, "no elements to convert");
  }

  std::vector<IdTriangle> triangles;
  for (const auto& record : elements) {
    for (NodeId id : record.node_ids) {
      if (!node_by_id.contains(id)) {
        throw Error(ErrorKind::Pipeline, "element " + std::to_string(record.id) +
                                             " references missing node " + std::to_string(id));
      }
    }
    ClassifiedElement element = classify(record, mapping);
    if (element.cls == ElementClass::Unsupported) {
      ++report.unsupported_elements;
      continue;
    }
    ++report.elements_per_class[std::string(to_string(element.cls))];
    if (surface) element.node_map = compute_node_map(element, *surface);
    auto tris = triangulate(element);
    if (tris.empty()) ++report.dropped_empty_elements;
    triangles.insert(triangles.end(), tris.begin(), tris.end());
  }
  std::stable_sort(triangles.begin(), triangles.end(), [](const IdTriangle& a, const IdTriangle& b) {
    return a.source_element < b.source_element;
  });
  report.emitted_triangles = triangles.size();

  if (options.dedup_faces) {
    // A face is the set of node ids over all triangles sharing (element, face).
    using FaceKey = std::pair<ElementId, std::size_t>;
    std::map<FaceKey, std::vector<NodeId>> face_nodes;
    for (const auto& t : triangles) {
      auto& ids = face_nodes[{t.source_element, t.face_index}];
      ids.insert(ids.end(), {t.a, t.b, t.c});
    }
    std::map<std::vector<NodeId>, std::size_t> occurrences;
    for (auto& [key, ids] : face_nodes) {
      std::sort(ids.begin(), ids.end());
      ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
      ++occurrences[ids];
    }
    const auto before = triangles.size();
    std::erase_if(triangles, [&](const IdTriangle& t) {
      return occurrences[face_nodes[{t.source_element, t.face_index}]] > 1;
    });
    report.duplicate_face_triangles_removed = before - triangles.size();
  }

  const auto position = [&](NodeId id) -> const Vec3& { return node_by_id.at(id)->position; };
  const auto degenerate = [&](const IdTriangle& t) {
    return !face_normal(position(t.a), position(t.b), position(t.c));
  };
  report.degenerate_triangles =
      static_cast<std::size_t>(std::count_if(triangles.begin(), triangles.end(), degenerate));
  if (options.drop_degenerate) {
    report.degenerate_triangles_removed = std::erase_if(triangles, degenerate);
  }

  std::set<NodeId> used;
  for (const auto& t : triangles) used.insert({t.a, t.b, t.c});

  if (surface) {
    for (const auto& node : nodes) {
      if (surface->contains(node.id)) ++report.surface_nodes;
    }
    report.retained_nodes = report.surface_nodes;
    report.excluded_nodes = report.input_nodes - report.retained_nodes;
  } else {
    report.retained_nodes = report.input_nodes;
  }
  report.orphan_vertices_removed = report.retained_nodes - used.size();

  if (used.empty() && !elements.empty()) {
    if (surface) throw Error(ErrorKind::Pipeline, "empty surface: no element face lies on the surface");
    if (!options.allow_empty) throw Error(ErrorKind::Pipeline, "no triangles produced");
  }

  auto numbering = renumber(used);
  auto& mesh = out.mesh;
  mesh.vertices.reserve(used.size());
  for (NodeId id : numbering.node_id_map) mesh.vertices.push_back(position(id));
  mesh.triangles.reserve(triangles.size());
  for (const auto& t : triangles) {
    mesh.triangles.push_back(
        {numbering.index.at(t.a), numbering.index.at(t.b), numbering.index.at(t.c)});
  }
  mesh.node_id_map = std::move(numbering.node_id_map);

  auto normals = vertex_normals(mesh);
  mesh.normals = std::move(normals.normals);
  report.fallback_normals = normals.fallback_vertices.size();
  report.vertices = mesh.vertices.size();
  report.triangles = mesh.triangles.size();
  return out;
}

}  // namespace fea2vr
