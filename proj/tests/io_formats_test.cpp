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

#include "fea2vr/io_formats.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <sstream>

#include "fea2vr/mesh_pipeline.hpp"
#include "support/hex_grid.hpp"

namespace {

using namespace fea2vr;

Conversion cube_with_temp() {
  auto grid = test_support::make_hex_grid(1);
  auto result = build_mesh(grid.nodes, grid.elements, TypeMapping::defaults(), std::nullopt);
  std::map<NodeId, double> raw;
  for (NodeId id = 1; id <= 8; ++id) raw[id] = 20.0 + 0.1 * static_cast<double>(id);
  auto field = remap_field("TEMP", raw, result.mesh.node_id_map);
  field.units = "degC";
  add_field(result.mesh, std::move(field));
  return result;
}

std::string written(const VrMesh& mesh, const ConversionReport& report) {
  std::ostringstream out;
  io::write_vrmesh(mesh, report, out);
  return out.str();
}

io::Json document_of(const Conversion& c) { return io::Json::parse(written(c.mesh, c.report)); }

TEST(WriteVrMesh, CubeDocumentShape) {
  const auto c = cube_with_temp();
  const auto doc = document_of(c);
  EXPECT_EQ(doc["format"], "vrmesh");
  EXPECT_EQ(doc["version"], 1);
  EXPECT_EQ(doc["vertices"].size(), 8u);
  EXPECT_EQ(doc["triangles"].size(), 12u);
  EXPECT_EQ(doc["normals"].size(), 8u);
  EXPECT_EQ(doc["fields"]["TEMP"]["values"].size(), 8u);
  EXPECT_EQ(doc["fields"]["TEMP"]["units"], "degC");
  EXPECT_EQ(doc["provenance"]["triangles"], 12);
}

TEST(WriteVrMesh, KeyOrderAndSingleTrailingNewline) {
  const auto c = cube_with_temp();
  const std::string text = written(c.mesh, c.report);
  ASSERT_FALSE(text.empty());
  EXPECT_EQ(text.back(), '\n');
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1);
  std::vector<std::string> keys;
  const auto doc = io::Json::parse(text);
  for (const auto& [key, value] : doc.items()) keys.push_back(key);
  EXPECT_EQ(keys, (std::vector<std::string>{"format", "version", "vertices", "triangles", "normals",
                                            "node_id_map", "fields", "provenance"}));
  EXPECT_EQ(text.rfind(R"({"format":"vrmesh","version":1,"vertices":[[0.0,0.0,0.0],)", 0), 0u);
}

TEST(WriteVrMesh, Deterministic) {
  const auto a = cube_with_temp();
  const auto b = cube_with_temp();
  EXPECT_EQ(written(a.mesh, a.report), written(b.mesh, b.report));
}

TEST(ReadVrMesh, RoundTrip) {
  const auto c = cube_with_temp();
  std::istringstream in(written(c.mesh, c.report));
  auto doc = io::read_vrmesh(in);
  EXPECT_EQ(doc.mesh, c.mesh);
  ASSERT_TRUE(doc.provenance);
  EXPECT_EQ(*doc.provenance, c.report);
  EXPECT_TRUE(doc.warnings.empty());
}

// Bit-identical reals survive the text form.
TEST(ReadVrMesh, RandomRealsRoundTripExactly) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    VrMesh mesh;
    ScalarField field{"F", {}, 0, 0, std::nullopt};
    for (int v = 0; v < 50; ++v) {
      auto bits = [&] {
        double x;
        do x = std::bit_cast<double>(rng()); while (!std::isfinite(x));
        return x;
      };
      mesh.vertices.push_back({bits(), bits(), bits()});
      mesh.normals.push_back({bits(), bits(), bits()});
      mesh.node_id_map.push_back(v + 1);
      field.values.push_back(bits());
    }
    field.min = *std::min_element(field.values.begin(), field.values.end());
    field.max = *std::max_element(field.values.begin(), field.values.end());
    mesh.fields.push_back(field);
    for (std::uint32_t t = 0; t + 2 < 50; ++t) mesh.triangles.push_back({t, t + 1, t + 2});
    auto back = io::parse_vrmesh(io::to_vrmesh_string(mesh, {}));
    EXPECT_EQ(back.mesh, mesh);
  }
}

TEST(ReadVrMesh, MissingValuesAreNull) {
  auto c = cube_with_temp();
  c.mesh.fields[0].values[2] = std::nan("");
  const std::string text = written(c.mesh, c.report);
  EXPECT_NE(text.find("null"), std::string::npos);
  auto back = io::parse_vrmesh(text);
  EXPECT_TRUE(std::isnan(back.mesh.fields[0].values[2]));
}

void expect_format_error(const std::string& text, const std::string& fragment) {
  try {
    io::parse_vrmesh(text);
    FAIL() << "expected an error containing '" << fragment << "'";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Format);
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
  }
}

TEST(ReadVrMesh, TriangleIndexOutOfRange) {
  auto doc = document_of(cube_with_temp());
  doc["triangles"][5][1] = 8;
  expect_format_error(doc.dump(), "triangle 5 index out of range");
  // Lenient mode loads it for validation.
  EXPECT_NO_THROW(io::parse_vrmesh(doc.dump(), false));
}

TEST(ReadVrMesh, SchemaErrors) {
  expect_format_error("", "invalid JSON");
  expect_format_error("[]", "object");
  auto base = document_of(cube_with_temp());

  auto doc = base;
  doc["version"] = 2;
  expect_format_error(doc.dump(), "version");

  doc = base;
  doc["format"] = "obj";
  expect_format_error(doc.dump(), "format");

  doc = base;
  doc.erase("triangles");
  expect_format_error(doc.dump(), "missing key 'triangles'");

  doc = base;
  doc["normals"].erase(0);
  expect_format_error(doc.dump(), "'normals' has 7 entries");

  doc = base;
  doc["node_id_map"][1] = doc["node_id_map"][0];
  expect_format_error(doc.dump(), "node_id_map[1] repeats");

  doc = base;
  doc["fields"]["TEMP"]["values"].erase(0);
  expect_format_error(doc.dump(), "fields.TEMP.values has 7 entries");

  doc = base;
  doc["fields"]["TEMP"]["max"] = 1000.0;
  expect_format_error(doc.dump(), "min/max");

  doc = base;
  doc["vertices"][3][2] = "x";
  expect_format_error(doc.dump(), "vertices[3][2]");

  // Reals beyond double range cannot be represented finitely.
  std::string text = base.dump();
  text.replace(text.find("[[0.0,0.0,0.0]"), 14, "[[0.0,0.0,1e999]");
  expect_format_error(text, "number overflow");

  doc = base;
  doc["normals"][2][0] = nullptr;
  expect_format_error(doc.dump(), "normals[2][0] is not a number");
}

TEST(ReadVrMesh, UnknownKeysWarn) {
  auto doc = document_of(cube_with_temp());
  doc["extra"] = 1;
  doc["fields"]["TEMP"]["colormap"] = "jet";
  doc["provenance"]["host"] = "x";
  auto back = io::parse_vrmesh(doc.dump());
  EXPECT_EQ(back.warnings.size(), 3u);
}

TEST(WriteObj, SingleTriangle) {
  VrMesh mesh;
  mesh.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  mesh.normals = {{0, 0, 1}, {0, 0, 1}, {0, 0, 1}};
  mesh.triangles = {{0, 1, 2}};
  mesh.node_id_map = {1, 2, 3};
  EXPECT_EQ(io::to_obj_string(mesh),
            "# fea2vr OBJ export\n"
            "v 0 0 0\nv 1 0 0\nv 0 1 0\n"
            "vn 0 0 1\nvn 0 0 1\nvn 0 0 1\n"
            "f 1//1 2//2 3//3\n");
}

TEST(WriteObj, CubeCounts) {
  const std::string obj = io::to_obj_string(cube_with_temp().mesh);
  std::istringstream in(obj);
  std::string line;
  std::map<std::string, int> counts;
  while (std::getline(in, line)) ++counts[line.substr(0, line.find(' '))];
  EXPECT_EQ(counts["v"], 8);
  EXPECT_EQ(counts["vn"], 8);
  EXPECT_EQ(counts["f"], 12);
}

TEST(WriteObj, EmptyMeshHeaderOnly) {
  EXPECT_EQ(io::to_obj_string(VrMesh{}), "# fea2vr OBJ export\n");
  VrMesh no_normals;
  no_normals.vertices = {{0, 0, 0}};
  EXPECT_THROW(io::to_obj_string(no_normals), Error);
}

}  // namespace
