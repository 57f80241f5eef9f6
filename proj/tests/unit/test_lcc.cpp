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

#include "fixtures.hpp"
#include "prunematch/lcc.hpp"
#include "prunematch/pipeline.hpp"
#include "prunematch/testkit.hpp"

namespace pm = prunematch;

namespace {

TEST(Lcc, InitialStatesFollowLabels) {
  const auto g = fixtures::graph(3, {{0, 1}, {1, 2}}, {0, 1, 5});
  const pm::Template t({0, 1, 0}, {{0, 1}, {1, 2}});
  const auto s = pm::init_states(g, t);
  EXPECT_EQ(s.active_vertex_count(), 2u);
  EXPECT_EQ(s.omega[0].size(), 2u);  // both a's
  EXPECT_TRUE(s.omega[2].empty());
  EXPECT_EQ(s.live_arc_count(g), 3u);  // 0<->1 and 1->2
  EXPECT_NO_THROW(pm::check_states(g, s));
}

TEST(Lcc, EtaFiltersByAdjacency) {
  const pm::Template t({0, 1, 2}, {{0, 1}, {1, 2}});
  pm::VertexSet sender;
  sender.insert(0);
  sender.insert(2);
  const auto e = pm::eta(t, sender, pm::VertexSet::single(1));
  EXPECT_EQ(e.size(), 2u);
  EXPECT_TRUE(pm::eta(t, pm::VertexSet::single(2), pm::VertexSet::single(0)).empty());
}

TEST(Lcc, RequirementsGroupRepeatedNeighbors) {
  // Star: center b with three a-leaves.
  const pm::Template t({1, 0, 0, 0}, {{0, 1}, {0, 2}, {0, 3}});
  const auto r = pm::local_requirements(t);
  ASSERT_EQ(r[0].groups.size(), 1u);
  EXPECT_EQ(r[0].groups[0].size(), 3u);
  EXPECT_TRUE(r[1].groups.empty());
}

TEST(Lcc, CountsDistinctNeighborsForRepeatedLabels) {
  // Center with only two a-neighbors cannot host a star with three.
  const pm::Template t({1, 0, 0, 0}, {{0, 1}, {0, 2}, {0, 3}});
  const auto g2 = fixtures::graph(3, {{0, 1}, {0, 2}}, {1, 0, 0});
  auto s = pm::init_states(g2, t);
  pm::lcc_fixed_point(g2, t, s);
  EXPECT_EQ(s.active_vertex_count(), 0u);

  const auto g3 = fixtures::graph(4, {{0, 1}, {0, 2}, {0, 3}}, {1, 0, 0, 0});
  auto s3 = pm::init_states(g3, t);
  pm::lcc_fixed_point(g3, t, s3);
  EXPECT_EQ(s3.active_vertex_count(), 4u);
}

TEST(Lcc, PeelsPathEndsIteratively) {
  // Path a-b-c template against a long a-b-a-b... chain ending in c.
  const pm::Template t({0, 1, 2}, {{0, 1}, {1, 2}});
  const auto g = fixtures::graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}}, {0, 1, 0, 1, 0, 1});
  auto s = pm::init_states(g, t);
  const auto rep = pm::lcc_fixed_point(g, t, s);
  EXPECT_EQ(s.active_vertex_count(), 0u);
  EXPECT_GE(rep.iterations, 1u);
}

TEST(Lcc, MessagesEqualLiveArcsEachIteration) {
  const auto inst = pm::testkit::random_instance({}, 5);
  auto s = pm::init_states(inst.graph, inst.templ);
  const auto rep = pm::lcc_fixed_point(inst.graph, inst.templ, s);
  ASSERT_FALSE(rep.per_iteration.empty());
  for (const auto& it : rep.per_iteration) EXPECT_EQ(it.alive_messages, it.live_arcs);
  EXPECT_FALSE(rep.per_iteration.back().changed());
}

TEST(Lcc, EdgeEliminationKillsIncompatibleEdges) {
  // a-b-c path template; the a-a edge in the graph is never usable.
  const pm::Template t({0, 1, 2}, {{0, 1}, {1, 2}});
  const auto g = fixtures::graph(4, {{0, 1}, {1, 2}, {0, 3}}, {0, 1, 2, 0});
  auto s = pm::init_states(g, t);
  pm::lcc_fixed_point(g, t, s);
  EXPECT_EQ(s.live_edge_count(g), 2u);
  EXPECT_FALSE(s.alpha[3]);
}

TEST(Lcc, WorkerCountDoesNotMatter) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto inst = pm::testkit::random_instance({}, seed);
    auto a = pm::init_states(inst.graph, inst.templ);
    auto b = a;
    pm::lcc_fixed_point(inst.graph, inst.templ, a);
    pm::EngineConfig four;
    four.workers = 4;
    pm::lcc_fixed_point(inst.graph, inst.templ, b, four);
    EXPECT_TRUE(a.same_solution(b)) << seed;
  }
}

TEST(Lcc, HexagonSurvivesTriangleLocally) {
  const auto g = fixtures::hexagon();
  auto s = pm::init_states(g, fixtures::triangle());
  pm::lcc_fixed_point(g, fixtures::triangle(), s);
  EXPECT_EQ(s.active_vertex_count(), 6u);
}

}  // namespace
