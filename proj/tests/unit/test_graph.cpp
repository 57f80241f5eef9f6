/* Copyright 2026 The prunematch Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "fixtures.hpp"
#include "prunematch/graph.hpp"

namespace pm = prunematch;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "prunematch_graph_test";
  fs::create_directories(dir);
  return dir / name;
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

TEST(Graph, BuildsSymmetricSortedAdjacency) {
  const auto g = fixtures::graph(4, {{2, 0}, {0, 1}, {1, 2}, {3, 2}});
  EXPECT_EQ(g.vertex_count(), 4u);
  EXPECT_EQ(g.edge_count(), 4u);
  EXPECT_EQ(g.arc_count(), 8u);
  const auto n2 = g.neighbors(2);
  EXPECT_EQ(std::vector<pm::VertexId>(n2.begin(), n2.end()), (std::vector<pm::VertexId>{0, 1, 3}));
  EXPECT_TRUE(g.has_edge(3, 2));
  EXPECT_TRUE(g.has_edge(2, 3));
  EXPECT_FALSE(g.has_edge(0, 3));
  EXPECT_EQ(g.degree(2), 3u);
}

TEST(Graph, ReverseSlotPointsBack) {
  const auto g = fixtures::k4();
  for (pm::VertexId v = 0; v < 4; ++v) {
    for (auto s = g.first_slot(v); s < g.end_slot(v); ++s) {
      const auto r = g.reverse_slot(s);
      EXPECT_EQ(g.slot_target(r), v);
      EXPECT_EQ(g.reverse_slot(r), s);
    }
  }
}

TEST(Graph, DropsSelfLoopsAndDuplicates) {
  const auto g = fixtures::graph(3, {{0, 0}, {0, 1}, {1, 0}, {0, 1}});
  EXPECT_EQ(g.edge_count(), 1u);
}

TEST(Graph, RejectsOutOfRangeEndpoints) {
  EXPECT_THROW(fixtures::graph(2, {{0, 5}}), pm::GraphError);
}

TEST(Graph, DefaultLabelsAreZero) {
  const auto g = fixtures::k4();
  for (pm::VertexId v = 0; v < 4; ++v) EXPECT_EQ(g.label(v), 0u);
  EXPECT_EQ(g.label_count(), 1u);
}

TEST(Graph, WithLabelsReplacesLabelsOnly) {
  const auto g = fixtures::k4().with_labels({0, 1, 2, 3});
  EXPECT_EQ(g.label(3), 3u);
  EXPECT_EQ(g.edge_count(), 6u);
  EXPECT_THROW((void)fixtures::k4().with_labels({0, 1}), pm::GraphError);
}

TEST(Graph, LoadsEdgeListAndLabels) {
  const auto el = scratch("g.el");
  write(el, "# comment\n0 1\n1 2\n2 2\n2 1\n");
  const auto r = pm::load_edge_list(el);
  EXPECT_EQ(r.graph.vertex_count(), 3u);
  EXPECT_EQ(r.graph.edge_count(), 2u);
  EXPECT_EQ(r.dropped_self_edges, 1u);
  EXPECT_EQ(r.dropped_duplicates, 1u);

  const auto lab = scratch("g.labels");
  write(lab, "0 4\n2 1\n");
  const auto g = pm::load_labels(lab, r.graph);
  EXPECT_EQ(g.label(0), 4u);
  EXPECT_EQ(g.label(1), 0u);
  EXPECT_EQ(g.label(2), 1u);
}

TEST(Graph, CompactsSparseIds) {
  const auto el = scratch("sparse.el");
  write(el, "100 7\n7 3000\n");
  const auto r = pm::load_edge_list(el, true);
  EXPECT_EQ(r.graph.vertex_count(), 3u);
  EXPECT_EQ(r.original_ids, (std::vector<std::uint64_t>{100, 7, 3000}));
}

TEST(Graph, ReportsParseErrorsWithLine) {
  const auto el = scratch("bad.el");
  write(el, "0 1\nx y\n");
  try {
    (void)pm::load_edge_list(el);
    FAIL() << "expected a parse error";
  } catch (const pm::ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Graph, WritesAndReadsBack) {
  const auto g = fixtures::hexagon();
  const auto el = scratch("round.el");
  const auto lab = scratch("round.labels");
  pm::write_edge_list(el, g);
  pm::write_labels(lab, g);
  const auto back = pm::load_labels(lab, pm::load_edge_list(el).graph);
  EXPECT_EQ(back, g);
}

TEST(Graph, StatsCountLabelsAndDegrees) {
  const auto s = pm::compute_stats(fixtures::hexagon());
  EXPECT_EQ(s.frequency(0), 2u);
  EXPECT_EQ(s.frequency(2), 2u);
  EXPECT_EQ(s.frequency(9), 0u);
}

TEST(Graph, InducedSubgraphKeepsLiveArcsOnly) {
  const auto g = fixtures::k4();
  std::vector<std::uint8_t> active{1, 1, 1, 0};
  std::vector<std::uint8_t> live(g.arc_count(), 1);
  const auto s01 = g.find_slot(0, 1);
  live[s01] = 0;
  live[g.reverse_slot(s01)] = 0;
  const auto ind = pm::induce_subgraph(g, active, live);
  EXPECT_EQ(ind.graph.vertex_count(), 3u);
  EXPECT_EQ(ind.graph.edge_count(), 2u);
}

}  // namespace
