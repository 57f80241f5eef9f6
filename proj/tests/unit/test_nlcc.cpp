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
#include "prunematch/cache.hpp"
#include "prunematch/lcc.hpp"
#include "prunematch/nlcc.hpp"
#include "prunematch/pipeline.hpp"
#include "prunematch/testkit.hpp"

namespace pm = prunematch;

namespace {

struct Rig {
  pm::LabeledGraph g;
  pm::Template t;
  pm::ConstraintSet plan;
  pm::VertexStates s;
  std::unique_ptr<pm::NlccEngine> engine;

  Rig(pm::LabeledGraph graph, pm::Template templ) : g(std::move(graph)), t(std::move(templ)) {
    plan = pm::generate_constraints(t, pm::analyze(t), pm::compute_stats(g));
    plan.symmetry = pm::compute_symmetry(t);
    s = pm::init_states(g, t);
    pm::lcc_fixed_point(g, t, s);
    engine = std::make_unique<pm::NlccEngine>(
        std::make_shared<pm::Partition>(pm::Partition::hashed(g.vertex_count(), 1)),
        pm::EngineConfig{});
  }

  pm::NlccReport check(std::size_t i, const pm::NlccOptions& opt = {}, pm::WorkReuseCache* c = nullptr) {
    return pm::check_constraint(g, t, plan.constraints.at(i), plan.symmetry, s, *engine, opt, c);
  }
};

TEST(Nlcc, CycleCheckEmptiesHexagon) {
  Rig x(fixtures::hexagon(), fixtures::triangle());
  ASSERT_EQ(x.s.active_vertex_count(), 6u);
  const auto r = x.check(0);
  EXPECT_TRUE(r.changed());
  EXPECT_EQ(r.sources_satisfied, 0u);
  EXPECT_EQ(x.s.active_vertex_count(), 0u);
}

TEST(Nlcc, CycleCheckKeepsRealTriangle) {
  // Triangle 0-1-2 plus a pendant hexagon-like tail that cannot close.
  auto g = fixtures::graph(6, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 5}, {5, 1}},
                           {0, 1, 2, 0, 1, 2});
  Rig x(std::move(g), fixtures::triangle());
  x.check(0);
  EXPECT_TRUE(x.s.alpha[0] && x.s.alpha[1] && x.s.alpha[2]);
  EXPECT_EQ(x.s.live_edge_count(x.g), 3u);
}

TEST(Nlcc, PathCheckRequiresDistinctRepeats) {
  // Template a-b-a needs two different a's around one b.
  const pm::Template t({0, 1, 0}, {{0, 1}, {1, 2}});
  auto g = fixtures::graph(4, {{0, 1}, {2, 3}, {3, 1}}, {0, 1, 0, 1});
  Rig x(std::move(g), t);
  for (std::size_t i = 0; i < x.plan.constraints.size(); ++i) x.check(i);
  pm::lcc_fixed_point(x.g, x.t, x.s);
  const auto oracle = pm::testkit::oracle_enumerate(x.g, t);
  EXPECT_EQ(pm::extract_solution(x.g, x.s), oracle.as_solution());
}

TEST(Nlcc, AggregationSavesForwards) {
  // Square a-b-c-d widened at b and d.
  std::vector<std::pair<pm::VertexId, pm::VertexId>> e;
  std::vector<pm::Label> lab{0, 2};
  for (pm::VertexId i = 0; i < 8; ++i) {
    lab.push_back(1);
    e.emplace_back(0, 2 + i);
    e.emplace_back(1, 2 + i);
  }
  for (pm::VertexId i = 0; i < 8; ++i) {
    lab.push_back(3);
    e.emplace_back(1, 10 + i);
    e.emplace_back(0, 10 + i);
  }
  const pm::Template t({0, 1, 2, 3}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  auto g = fixtures::graph(lab.size(), e, lab);
  Rig on(g, t);
  Rig off(g, t);
  pm::NlccOptions no;
  no.work_aggregation = false;
  const auto a = on.check(0);
  const auto b = off.check(0, no);
  EXPECT_LT(a.forwarded(), b.forwarded());
  EXPECT_GT(a.aggregated, 0u);
  EXPECT_TRUE(on.s.same_solution(off.s));
}

TEST(Nlcc, CacheFailEntriesReplayWithinEpoch) {
  Rig x(fixtures::hexagon(), fixtures::triangle());
  Rig y(fixtures::hexagon(), fixtures::triangle());
  pm::WorkReuseCache cache;
  x.check(0, {}, &cache);
  EXPECT_GT(cache.size(), 0u);
  const auto r = y.check(0, {}, &cache);
  EXPECT_GT(r.cache_fail_hits, 0u);
  EXPECT_EQ(y.s.active_vertex_count(), 0u);

  cache.new_epoch();
  Rig z(fixtures::hexagon(), fixtures::triangle());
  const auto r2 = z.check(0, {}, &cache);
  EXPECT_EQ(r2.cache_fail_hits, 0u);
  EXPECT_EQ(z.s.active_vertex_count(), 0u);
}

TEST(Nlcc, CachePassHitsReduceCoverage) {
  auto g = fixtures::graph(3, {{0, 1}, {1, 2}, {2, 0}}, {0, 1, 2});
  Rig x(g, fixtures::triangle());
  Rig y(g, fixtures::triangle());
  pm::WorkReuseCache cache;
  x.check(0, {}, &cache);
  const auto r = y.check(0, {}, &cache);
  EXPECT_GT(r.cache_pass_hits, 0u);
  EXPECT_EQ(y.s.active_vertex_count(), 3u);
}

TEST(Nlcc, StaleWitnessIsIgnored) {
  auto g = fixtures::graph(3, {{0, 1}, {1, 2}, {2, 0}}, {0, 1, 2});
  Rig x(g, fixtures::triangle());
  pm::WorkReuseCache cache;
  x.check(0, {}, &cache);
  // Kill one edge; cached witnesses through it no longer hold.
  Rig y(g, fixtures::triangle());
  y.s.kill_edge(y.g, y.g.find_slot(0, 1));
  y.check(0, {}, &cache);
  EXPECT_GT(cache.stats().stale, 0u);
  EXPECT_EQ(y.s.active_vertex_count(), 0u);
}

TEST(Nlcc, MatchesOracleOnRandomInstances) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    pm::testkit::InstanceParams p;
    p.vertices = 20;
    p.edge_probability = 0.25;
    p.labels = 2;
    p.template_vertices = 5;
    const auto inst = pm::testkit::random_instance(p, seed);
    const auto got = pm::prune(inst.graph, inst.templ);
    EXPECT_EQ(got, pm::testkit::oracle_enumerate(inst.graph, inst.templ).as_solution()) << seed;
  }
}

}  // namespace
