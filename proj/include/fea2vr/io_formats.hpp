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

// The "vrmesh" JSON document and OBJ export.
//
// vrmesh is one compact JSON object with keys in this order:
//   format ("vrmesh"), version (1), vertices [[x,y,z]...], triangles [[a,b,c]...],
//   normals [[x,y,z]...], node_id_map [id...],
//   fields {NAME: {values [...], min, max, units?}}, provenance {...}
// followed by a single LF. Reals are written in shortest round-trip form, so
// reading a document back gives bit-identical values. A missing field value
// is written as null.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <iterator>
#include <limits>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fea2vr/error.hpp"
#include "fea2vr/mesh.hpp"
#include "fea2vr/types.hpp"

namespace fea2vr::io {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kFormatName = "vrmesh";
inline constexpr int kFormatVersion = 1;

inline Json report_to_json(const ConversionReport& r) {
  Json classes = Json::object();
  for (const auto& [name, count] : r.elements_per_class) classes[name] = count;
  return Json{
      {"optimized", r.optimized},
      {"input_nodes", r.input_nodes},
      {"surface_nodes", r.surface_nodes},
      {"excluded_nodes", r.excluded_nodes},
      {"retained_nodes", r.retained_nodes},
      {"input_elements", r.input_elements},
      {"elements_per_class", classes},
      {"unsupported_elements", r.unsupported_elements},
      {"dropped_empty_elements", r.dropped_empty_elements},
      {"emitted_triangles", r.emitted_triangles},
      {"duplicate_face_triangles_removed", r.duplicate_face_triangles_removed},
      {"degenerate_triangles", r.degenerate_triangles},
      {"degenerate_triangles_removed", r.degenerate_triangles_removed},
      {"orphan_vertices_removed", r.orphan_vertices_removed},
      {"vertices", r.vertices},
      {"triangles", r.triangles},
      {"fallback_normals", r.fallback_normals},
  };
}

namespace detail {

inline Json vec3_array(const std::vector<Vec3>& points) {
  Json out = Json::array();
  for (const auto& p : points) out.push_back({p[0], p[1], p[2]});
  return out;
}

[[noreturn]] inline void fail(const std::string& message) {
  throw Error(ErrorKind::Format, message);
}

inline const Json& require(const Json& object, const char* key) {
  auto it = object.find(key);
  if (it == object.end()) fail(std::string("missing key '") + key + "'");
  return *it;
}

inline const Json& require_array(const Json& object, const char* key) {
  const Json& value = require(object, key);
  if (!value.is_array()) fail(std::string("'") + key + "' must be an array");
  return value;
}

inline double finite_number(const Json& value, const std::string& where) {
  if (!value.is_number()) fail(where + " is not a number");
  double x = value.get<double>();
  if (!std::isfinite(x)) fail(where + " is not finite");
  return x;
}

/// null stands for a missing value.
inline double number_or_nan(const Json& value, const std::string& where) {
  if (value.is_null()) return std::numeric_limits<double>::quiet_NaN();
  return finite_number(value, where);
}

inline std::vector<Vec3> read_points(const Json& array, const char* key) {
  std::vector<Vec3> out;
  out.reserve(array.size());
  for (std::size_t i = 0; i < array.size(); ++i) {
    const std::string where = std::string(key) + "[" + std::to_string(i) + "]";
    const Json& p = array[i];
    if (!p.is_array() || p.size() != 3) fail(where + " must be an array of 3 numbers");
    out.push_back({finite_number(p[0], where + "[0]"), finite_number(p[1], where + "[1]"),
                   finite_number(p[2], where + "[2]")});
  }
  return out;
}

inline bool same_value(double a, double b) {
  return (std::isnan(a) && std::isnan(b)) || a == b;
}

inline ConversionReport read_report(const Json& p, std::vector<std::string>& warnings) {
  if (!p.is_object()) fail("'provenance' must be an object");
  ConversionReport r;
  auto count = [&](const std::string& key, const Json& value) -> std::size_t {
    if (!value.is_number_unsigned()) fail("provenance." + key + " must be a non-negative integer");
    return value.get<std::size_t>();
  };
  for (const auto& [key, value] : p.items()) {
    if (key == "optimized") {
      if (!value.is_boolean()) fail("provenance.optimized must be a boolean");
      r.optimized = value.get<bool>();
    } else if (key == "elements_per_class") {
      if (!value.is_object()) fail("provenance.elements_per_class must be an object");
      for (const auto& [name, n] : value.items()) r.elements_per_class[name] = count(key + "." + name, n);
    } else if (key == "input_nodes") r.input_nodes = count(key, value);
    else if (key == "surface_nodes") r.surface_nodes = count(key, value);
    else if (key == "excluded_nodes") r.excluded_nodes = count(key, value);
    else if (key == "retained_nodes") r.retained_nodes = count(key, value);
    else if (key == "input_elements") r.input_elements = count(key, value);
    else if (key == "unsupported_elements") r.unsupported_elements = count(key, value);
    else if (key == "dropped_empty_elements") r.dropped_empty_elements = count(key, value);
    else if (key == "emitted_triangles") r.emitted_triangles = count(key, value);
    else if (key == "duplicate_face_triangles_removed") r.duplicate_face_triangles_removed = count(key, value);
    else if (key == "degenerate_triangles") r.degenerate_triangles = count(key, value);
    else if (key == "degenerate_triangles_removed") r.degenerate_triangles_removed = count(key, value);
    else if (key == "orphan_vertices_removed") r.orphan_vertices_removed = count(key, value);
    else if (key == "vertices") r.vertices = count(key, value);
    else if (key == "triangles") r.triangles = count(key, value);
    else if (key == "fallback_normals") r.fallback_normals = count(key, value);
    else warnings.push_back("ignored unknown key 'provenance." + key + "'");
  }
  return r;
}

}  // namespace detail

inline Json to_json(const VrMesh& mesh, const ConversionReport& report) {
  Json triangles = Json::array();
  for (const auto& t : mesh.triangles) triangles.push_back({t[0], t[1], t[2]});
  Json fields = Json::object();
  for (const auto& f : mesh.fields) {
    Json entry{{"values", f.values}, {"min", f.min}, {"max", f.max}};
    if (f.units) entry["units"] = *f.units;
    fields[f.name] = std::move(entry);
  }
  return Json{
      {"format", kFormatName},
      {"version", kFormatVersion},
      {"vertices", detail::vec3_array(mesh.vertices)},
      {"triangles", std::move(triangles)},
      {"normals", detail::vec3_array(mesh.normals)},
      {"node_id_map", mesh.node_id_map},
      {"fields", std::move(fields)},
      {"provenance", report_to_json(report)},
  };
}

inline std::string to_vrmesh_string(const VrMesh& mesh, const ConversionReport& report) {
  return to_json(mesh, report).dump() + '\n';
}

inline void write_vrmesh(const VrMesh& mesh, const ConversionReport& report, std::ostream& sink) {
  sink << to_vrmesh_string(mesh, report);
  sink.flush();
  if (!sink) throw Error(ErrorKind::Io, "failed to write vrmesh document");
}

struct VrMeshDocument {
  VrMesh mesh;
  std::optional<ConversionReport> provenance;
  std::vector<std::string> warnings;
};

/// `check_triangle_indices = false` loads meshes with out-of-range indices
/// so that `validate` can report them.
inline VrMeshDocument parse_vrmesh(std::string_view text, bool check_triangle_indices = true) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    detail::fail(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) detail::fail("document must be a JSON object");

  VrMeshDocument out;
  const Json& format = detail::require(doc, "format");
  if (!format.is_string() || format.get<std::string>() != kFormatName) {
    detail::fail("'format' must be \"vrmesh\"");
  }
  const Json& version = detail::require(doc, "version");
  if (!version.is_number_integer() || version.get<std::int64_t>() != kFormatVersion) {
    detail::fail("unsupported version " + version.dump() + "; expected 1");
  }

  auto& mesh = out.mesh;
  mesh.vertices = detail::read_points(detail::require_array(doc, "vertices"), "vertices");
  const std::size_t n = mesh.vertices.size();

  const Json& triangles = detail::require_array(doc, "triangles");
  mesh.triangles.reserve(triangles.size());
  for (std::size_t i = 0; i < triangles.size(); ++i) {
    const Json& t = triangles[i];
    if (!t.is_array() || t.size() != 3) {
      detail::fail("triangle " + std::to_string(i) + " must be an array of 3 indices");
    }
    Triangle tri{};
    for (std::size_t k = 0; k < 3; ++k) {
      if (!t[k].is_number_unsigned()) {
        detail::fail("triangle " + std::to_string(i) + " index is not a non-negative integer");
      }
      const auto index = t[k].get<std::uint64_t>();
      if (check_triangle_indices && index >= n) detail::fail("triangle " + std::to_string(i) + " index out of range");
      if (index > std::numeric_limits<std::uint32_t>::max()) {
        detail::fail("triangle " + std::to_string(i) + " index exceeds 32 bits");
      }
      tri[k] = static_cast<std::uint32_t>(index);
    }
    mesh.triangles.push_back(tri);
  }

  mesh.normals = detail::read_points(detail::require_array(doc, "normals"), "normals");
  if (mesh.normals.size() != n) {
    detail::fail("'normals' has " + std::to_string(mesh.normals.size()) + " entries, expected " +
                 std::to_string(n));
  }

  const Json& ids = detail::require_array(doc, "node_id_map");
  if (ids.size() != n) {
    detail::fail("'node_id_map' has " + std::to_string(ids.size()) + " entries, expected " +
                 std::to_string(n));
  }
  std::set<NodeId> distinct;
  for (std::size_t i = 0; i < n; ++i) {
    if (!ids[i].is_number_integer()) detail::fail("node_id_map[" + std::to_string(i) + "] is not an integer");
    const auto id = ids[i].get<NodeId>();
    if (!distinct.insert(id).second) {
      detail::fail("node_id_map[" + std::to_string(i) + "] repeats node " + std::to_string(id));
    }
    mesh.node_id_map.push_back(id);
  }

  const Json& fields = detail::require(doc, "fields");
  if (!fields.is_object()) detail::fail("'fields' must be an object");
  for (const auto& [name, entry] : fields.items()) {
    const std::string where = "fields." + name;
    if (!entry.is_object()) detail::fail(where + " must be an object");
    ScalarField field;
    field.name = name;
    const Json& values = detail::require_array(entry, "values");
    if (values.size() != n) {
      detail::fail(where + ".values has " + std::to_string(values.size()) + " entries, expected " +
                   std::to_string(n));
    }
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = detail::number_or_nan(values[i], where + ".values[" + std::to_string(i) + "]");
      field.values.push_back(v);
      if (!std::isnan(v)) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
    if (lo > hi) lo = hi = std::numeric_limits<double>::quiet_NaN();
    field.min = detail::number_or_nan(detail::require(entry, "min"), where + ".min");
    field.max = detail::number_or_nan(detail::require(entry, "max"), where + ".max");
    if (!detail::same_value(field.min, lo) || !detail::same_value(field.max, hi)) {
      detail::fail(where + " min/max do not match its values");
    }
    for (const auto& [key, value] : entry.items()) {
      if (key == "units") {
        if (!value.is_string()) detail::fail(where + ".units must be a string");
        field.units = value.get<std::string>();
      } else if (key != "values" && key != "min" && key != "max") {
        out.warnings.push_back("ignored unknown key '" + where + "." + key + "'");
      }
    }
    mesh.fields.push_back(std::move(field));
  }

  if (auto it = doc.find("provenance"); it != doc.end()) {
    out.provenance = detail::read_report(*it, out.warnings);
  }

  static const std::set<std::string> kKnown = {"format", "version", "vertices", "triangles",
                                               "normals", "node_id_map", "fields", "provenance"};
  for (const auto& [key, value] : doc.items()) {
    if (!kKnown.contains(key)) out.warnings.push_back("ignored unknown key '" + key + "'");
  }
  return out;
}

inline VrMeshDocument read_vrmesh(std::istream& source) {
  std::string text{std::istreambuf_iterator<char>(source), std::istreambuf_iterator<char>()};
  if (source.bad()) throw Error(ErrorKind::Io, "failed to read vrmesh document");
  return parse_vrmesh(text);
}

/// `v`, `vn` and `f a//a b//b c//c` lines with 1-based indices.
inline std::string to_obj_string(const VrMesh& mesh) {
  if (mesh.normals.size() != mesh.vertices.size()) {
    throw Error(ErrorKind::Format, "OBJ export needs one normal per vertex");
  }
  using fea2vr::detail::format_real;
  std::string out = "# fea2vr OBJ export\n";
  for (const auto& p : mesh.vertices) {
    out += "v " + format_real(p[0]) + ' ' + format_real(p[1]) + ' ' + format_real(p[2]) + '\n';
  }
  for (const auto& n : mesh.normals) {
    out += "vn " + format_real(n[0]) + ' ' + format_real(n[1]) + ' ' + format_real(n[2]) + '\n';
  }
  for (const auto& t : mesh.triangles) {
    out += 'f';
    for (auto v : t) {
      const auto index = std::to_string(v + 1);
      out += ' ' + index + "//" + index;
    }
    out += '\n';
  }
  return out;
}

inline void write_obj(const VrMesh& mesh, std::ostream& sink) {
  sink << to_obj_string(mesh);
  sink.flush();
  if (!sink) throw Error(ErrorKind::Io, "failed to write OBJ");
}

}  // namespace fea2vr::io
