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
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fea2vr/mesh.hpp"

namespace fea2vr {

inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator*(double s, const Vec3& v) { return {s * v[0], s * v[1], s * v[2]}; }

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

/// Unit normal by the right-hand rule, or nullopt when the triangle is
/// degenerate: |cross| < 1e-12 * (longest edge)^2.
inline std::optional<Vec3> face_normal(const Vec3& p0, const Vec3& p1, const Vec3& p2) {
  const Vec3 n = cross(p1 - p0, p2 - p0);
  const double length = norm(n);
  const double longest2 =
      std::max({dot(p1 - p0, p1 - p0), dot(p2 - p1, p2 - p1), dot(p0 - p2, p0 - p2)});
  if (!(length > 0.0) || length < 1e-12 * longest2) return std::nullopt;
  return (1.0 / length) * n;
}

struct VertexNormals {
  std::vector<Vec3> normals;
  /// Vertices with no usable incident face; they were given (0,0,1).
  std::vector<std::size_t> fallback_vertices;
};

/// Area-weighted average of incident face normals. Triangles with an
/// out-of-range index are ignored.
inline VertexNormals vertex_normals(const VrMesh& mesh) {
  const std::size_t n = mesh.vertices.size();
  std::vector<Vec3> sums(n, Vec3{0, 0, 0});
  for (const auto& t : mesh.triangles) {
    if (t[0] >= n || t[1] >= n || t[2] >= n) continue;
    const Vec3& p0 = mesh.vertices[t[0]];
    const Vec3& p1 = mesh.vertices[t[1]];
    const Vec3& p2 = mesh.vertices[t[2]];
    if (!face_normal(p0, p1, p2)) continue;
    // |cross| is twice the area, so the raw cross product is the weighted normal.
    const Vec3 weighted = cross(p1 - p0, p2 - p0);
    for (auto v : t) sums[v] = sums[v] + weighted;
  }
  VertexNormals out;
  out.normals.reserve(n);
  for (std::size_t v = 0; v < n; ++v) {
    const double length = norm(sums[v]);
    if (length > 0.0 && std::isfinite(length)) {
      out.normals.push_back((1.0 / length) * sums[v]);
    } else {
      out.normals.push_back({0, 0, 1});
      out.fallback_vertices.push_back(v);
    }
  }
  return out;
}

struct MeshIssue {
  enum class Kind { IndexOutOfRange, DegenerateTriangle, DuplicateTriangle, NonFiniteCoordinate };
  Kind kind;
  std::size_t location;  // triangle index, or vertex index for NonFiniteCoordinate

  friend bool operator==(const MeshIssue&, const MeshIssue&) = default;
};

inline const char* to_string(MeshIssue::Kind kind) {
  switch (kind) {
    case MeshIssue::Kind::IndexOutOfRange: return "IndexOutOfRange";
    case MeshIssue::Kind::DegenerateTriangle: return "DegenerateTriangle";
    case MeshIssue::Kind::DuplicateTriangle: return "DuplicateTriangle";
    case MeshIssue::Kind::NonFiniteCoordinate: return "NonFiniteCoordinate";
  }
  return "Unknown";
}

inline std::string describe(const MeshIssue& issue) {
  const bool at_vertex = issue.kind == MeshIssue::Kind::NonFiniteCoordinate;
  return std::string(to_string(issue.kind)) + (at_vertex ? " at vertex " : " at triangle ") +
         std::to_string(issue.location);
}

/// Every problem found, vertices first then triangles in order. Duplicates
/// compare vertex sets, so a reversed copy of a triangle also counts; the
/// later copy is reported.
inline std::vector<MeshIssue> validate(const VrMesh& mesh) {
  using Kind = MeshIssue::Kind;
  std::vector<MeshIssue> issues;
  const std::size_t n = mesh.vertices.size();
  for (std::size_t v = 0; v < n; ++v) {
    const auto& p = mesh.vertices[v];
    if (!std::isfinite(p[0]) || !std::isfinite(p[1]) || !std::isfinite(p[2])) {
      issues.push_back({Kind::NonFiniteCoordinate, v});
    }
  }
  std::set<Triangle> seen;
  for (std::size_t i = 0; i < mesh.triangles.size(); ++i) {
    const auto& t = mesh.triangles[i];
    if (t[0] >= n || t[1] >= n || t[2] >= n) {
      issues.push_back({Kind::IndexOutOfRange, i});
      continue;
    }
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2] ||
        !face_normal(mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]])) {
      issues.push_back({Kind::DegenerateTriangle, i});
    }
    Triangle key = t;
    std::sort(key.begin(), key.end());
    if (!seen.insert(key).second) issues.push_back({Kind::DuplicateTriangle, i});
  }
  return issues;
}

struct FieldStats {
  std::string name;
  double min = 0, max = 0, mean = 0;
  std::size_t missing = 0;
};

struct MeshStats {
  std::size_t vertex_count = 0;
  std::size_t triangle_count = 0;
  std::optional<std::pair<Vec3, Vec3>> bounding_box;  // empty mesh has none
  std::vector<FieldStats> fields;
};

inline MeshStats stats(const VrMesh& mesh) {
  MeshStats out;
  out.vertex_count = mesh.vertices.size();
  out.triangle_count = mesh.triangles.size();
  if (!mesh.vertices.empty()) {
    Vec3 lo = mesh.vertices.front(), hi = lo;
    for (const auto& p : mesh.vertices) {
      for (int k = 0; k < 3; ++k) {
        lo[k] = std::min(lo[k], p[k]);
        hi[k] = std::max(hi[k], p[k]);
      }
    }
    out.bounding_box = std::pair{lo, hi};
  }
  for (const auto& f : mesh.fields) {
    FieldStats row{f.name, f.min, f.max, std::numeric_limits<double>::quiet_NaN(), 0};
    double sum = 0;
    std::size_t count = 0;
    for (double v : f.values) {
      if (std::isfinite(v)) {
        sum += v;
        ++count;
      } else {
        ++row.missing;
      }
    }
    if (count > 0) row.mean = sum / static_cast<double>(count);
    out.fields.push_back(row);
  }
  return out;
}

}  // namespace fea2vr
