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

#include "fea2vr/triangulation.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

namespace {

using namespace fea2vr;
using Ids = std::array<NodeId, 3>;

std::vector<Ids> id_triples(const std::vector<IdTriangle>& tris) {
  std::vector<Ids> out;
  for (const auto& t : tris) out.push_back(t.ids());
  return out;
}

ClassifiedElement element(ElementClass cls, std::vector<NodeId> nodes, std::uint64_t bits = 0) {
  ClassifiedElement e;
  e.record = {1, 1, 1, 1, 0, 1, nodes};
  e.cls = cls;
  e.distinct_node_count = std::set<NodeId>(nodes.begin(), nodes.end()).size();
  e.node_map = {bits, nodes.size()};
  return e;
}

ClassifiedElement hex(std::uint64_t bits = 0) {
  return element(ElementClass::Hex8, {1, 2, 3, 4, 5, 6, 7, 8}, bits);
}

// Corners I..L = 1..4, midsides M N O P Q R = 5..10.
ClassifiedElement tet10(std::uint64_t bits = 0) {
  return element(ElementClass::Solid92, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, bits);
}

TEST(SplitQuad, Examples) {
  auto a = split_quad({1, 2, 3, 4});
  EXPECT_EQ(a[0].ids(), (Ids{1, 2, 3}));
  EXPECT_EQ(a[1].ids(), (Ids{1, 3, 4}));
  auto b = split_quad({4, 3, 2, 1});
  EXPECT_EQ(b[0].ids(), (Ids{4, 3, 2}));
  EXPECT_EQ(b[1].ids(), (Ids{4, 2, 1}));
  auto c = split_quad({10, 20, 30, 40});
  EXPECT_EQ(c[0].ids(), (Ids{10, 20, 30}));
  EXPECT_EQ(c[1].ids(), (Ids{10, 30, 40}));
}

TEST(Shell, RepeatedTrailingNodeMakesOneTriangle) {
  auto tris = triangulate_shell(element(ElementClass::Shell, {23, 24, 65, 65}));
  EXPECT_EQ(id_triples(tris), (std::vector<Ids>{{23, 24, 65}}));
}

TEST(Shell, QuadSplits) {
  auto tris = triangulate_shell(element(ElementClass::Shell, {1, 2, 3, 4}));
  EXPECT_EQ(id_triples(tris), (std::vector<Ids>{{1, 2, 3}, {1, 3, 4}}));
}

TEST(Shell, MaskedCornerLeavesTriangle) {
  // Node 4 is local 3: mask 0b1000 leaves 1,2,3.
  auto tris = triangulate_shell(element(ElementClass::Shell, {1, 2, 3, 4}, 0b1000));
  EXPECT_EQ(id_triples(tris), (std::vector<Ids>{{1, 2, 3}}));
}

TEST(Shell, FewerThanThreeSurvivorsIsEmpty) {
  EXPECT_TRUE(triangulate_shell(element(ElementClass::Shell, {1, 2, 3, 4}, 0b0110)).empty());
  EXPECT_TRUE(triangulate_shell(element(ElementClass::Shell, {1, 2, 3, 3}, 0b0001)).empty());
}

TEST(Hex, UnmaskedGivesTwelve) { EXPECT_EQ(triangulate_hex(hex()).size(), 12u); }

TEST(Hex, FullyMaskedIsEmpty) { EXPECT_TRUE(triangulate_hex(hex(255)).empty()); }

TEST(Hex, TwoInnerCornersLeaveTwoFaces) {
  auto tris = triangulate_hex(hex(9));
  ASSERT_EQ(tris.size(), 4u);
  EXPECT_EQ(id_triples(tris), (std::vector<Ids>{{5, 6, 7}, {5, 7, 8}, {2, 3, 7}, {2, 7, 6}}));
  EXPECT_EQ(tris[0].face_index, 1u);
  EXPECT_EQ(tris[2].face_index, 3u);
}

TEST(Hex, LoneHexIsClosedAndConsistentlyWound) {
  auto tris = triangulate_hex(hex());
  std::map<std::pair<NodeId, NodeId>, int> directed;
  std::set<NodeId> vertices;
  for (const auto& t : tris) {
    const auto ids = t.ids();
    for (int k = 0; k < 3; ++k) {
      ++directed[{ids[k], ids[(k + 1) % 3]}];
      vertices.insert(ids[k]);
    }
  }
  EXPECT_EQ(vertices.size(), 8u);
  EXPECT_EQ(directed.size(), 36u);  // 18 undirected edges, both directions
  for (const auto& [edge, count] : directed) {
    EXPECT_EQ(count, 1);
    EXPECT_EQ(directed.count({edge.second, edge.first}), 1u);
  }
  // V - E + F = 8 - 18 + 12 = 2
  EXPECT_EQ(8 - static_cast<int>(directed.size() / 2) + static_cast<int>(tris.size()), 2);
}

TEST(Hex, FaceTableCoversEachCornerThreeTimes) {
  std::array<int, 8> uses{};
  for (const auto& face : kHexFaces)
    for (auto local : face) ++uses[local];
  for (int u : uses) EXPECT_EQ(u, 3);
}

TEST(Solid92, UnmaskedGivesSixteen) { EXPECT_EQ(triangulate_solid92(tet10()).size(), 16u); }

TEST(Solid92, FullyMaskedIsEmpty) { EXPECT_TRUE(triangulate_solid92(tet10(0x3FF)).empty()); }

TEST(Solid92, OnlyBaseFaceSurvives) {
  // Surface {I,J,K,M,N,O} = ids {1,2,3,5,6,7}; masked: L(3), P(7), Q(8), R(9).
  const std::uint64_t bits = (1u << 3) | (1u << 7) | (1u << 8) | (1u << 9);
  auto tris = triangulate_solid92(tet10(bits));
  EXPECT_EQ(id_triples(tris), (std::vector<Ids>{{1, 5, 7}, {5, 2, 6}, {7, 6, 3}, {5, 6, 7}}));
}

TEST(Solid92, FaceTableCounts) {
  std::array<int, 10> uses{};
  for (const auto& face : kTetFaces)
    for (auto local : face) ++uses[local];
  for (int corner = 0; corner < 4; ++corner) EXPECT_EQ(uses[corner], 3);
  for (int mid = 4; mid < 10; ++mid) EXPECT_EQ(uses[mid], 2);
}

TEST(Dispatch, UnsupportedIsEmpty) {
  EXPECT_TRUE(triangulate(element(ElementClass::Unsupported, {1, 2, 3})).empty());
}

TEST(Dispatch, CollapsedHexDropsRepeatedIdTriangles) {
  // Prism written as a hex: K=L and O=P.
  auto tris = triangulate(element(ElementClass::Hex8, {1, 2, 3, 3, 5, 6, 7, 7}));
  for (const auto& t : tris) {
    EXPECT_NE(t.a, t.b);
    EXPECT_NE(t.b, t.c);
    EXPECT_NE(t.a, t.c);
  }
  EXPECT_EQ(tris.size(), 8u);  // 2 caps x 1 + 3 quads x 2
}

// Setting more bits never adds a triangle, output is ordered by
// (face, tri), and no triangle repeats a node id.
TEST(TriangulationProperties, MaskMonotonicity) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 2000; ++trial) {
    const bool is_hex = trial % 2 == 0;
    const std::uint64_t width_mask = is_hex ? 0xFF : 0x3FF;
    const std::uint64_t m = rng() & width_mask;
    const std::uint64_t m_more = m | (rng() & width_mask);
    auto make = [&](std::uint64_t bits) { return is_hex ? hex(bits) : tet10(bits); };
    const auto base = triangulate(make(0));
    const auto fewer = triangulate(make(m));
    const auto fewest = triangulate(make(m_more));
    const auto base_ids = id_triples(base);
    const std::set<Ids> base_set(base_ids.begin(), base_ids.end());
    const auto fewer_ids = id_triples(fewer);
    const std::set<Ids> fewer_set(fewer_ids.begin(), fewer_ids.end());
    for (const auto& t : id_triples(fewest)) EXPECT_TRUE(fewer_set.contains(t));
    for (const auto& t : fewer_ids) EXPECT_TRUE(base_set.contains(t));
    for (std::size_t i = 1; i < fewer.size(); ++i) {
      EXPECT_LT(std::pair(fewer[i - 1].face_index, fewer[i - 1].tri_index),
                std::pair(fewer[i].face_index, fewer[i].tri_index));
    }
  }
}

}  // namespace
