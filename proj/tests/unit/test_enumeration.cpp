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

#include <set>

#include "fixtures.hpp"
#include "prunematch/enumeration.hpp"
#include "prunematch/pipeline.hpp"
#include "prunematch/testkit.hpp"

namespace pm = prunematch;

namespace {

TEST(Enumeration, TrianglesInK4) {
  const auto g = fixtures::k4();
  const auto t = fixtures::clique(3);
  const auto sol = pm::prune(g, t);
  const auto c = pm::count_matches(sol, t);
  EXPECT_EQ(c.mappings, 24u);
  EXPECT_EQ(c.automorphisms, 6u);
  EXPECT_EQ(c.embeddings, 4u);
  ASSERT_EQ(c.participation.size(), 4u);
  for (auto n : c.participation) EXPECT_EQ(n, 18u);  // 6 mappings per triangle, 3 triangles each
}

TEST(Enumeration, EveryMatchVerifies) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto inst = pm::testkit::random_instance({}, seed);
    const auto sol = pm::prune(inst.graph, inst.templ);
    const auto all = pm::enumerate_all(sol, inst.templ);
    const auto oracle = pm::testkit::oracle_enumerate(inst.graph, inst.templ);
    EXPECT_EQ(all.size(), oracle.mappings) << seed;
    std::set<std::vector<pm::VertexId>> a(all.begin(), all.end());
    std::set<std::vector<pm::VertexId>> b(oracle.matches.begin(), oracle.matches.end());
    EXPECT_EQ(a, b) << seed;
    for (const auto& m : all) EXPECT_TRUE(pm::verify_match(inst.graph, inst.templ, m));
  }
}

TEST(Enumeration, LimitStopsEarly) {
  const auto g = fixtures::k4();
  const auto t = fixtures::clique(3);
  const auto sol = pm::prune(g, t);
  EXPECT_EQ(pm::enumerate_all(sol, t, 5).size(), 5u);
  std::size_t seen = 0;
  const auto n = pm::enumerate(sol, t, [&](std::span<const pm::VertexId>) { return ++seen < 2; });
  EXPECT_EQ(seen, 2u);
  EXPECT_EQ(n, 2u);
}

TEST(Enumeration, ParallelCountsAgree) {
  pm::testkit::RmatParams rp;
  rp.scale = 8;
  rp.edge_factor = 8;
  rp.seed = 3;
  const auto g = pm::testkit::rmat_generate(rp);
  const auto t = fixtures::clique(3);
  const auto sol = pm::prune(g, t);
  const auto one = pm::count_matches(sol, t, 1);
  const auto four = pm::count_matches(sol, t, 4);
  EXPECT_EQ(one.mappings, four.mappings);
  EXPECT_EQ(one.participation, four.participation);
  EXPECT_GT(one.embeddings, 0u);
}

TEST(Enumeration, VerifyRejectsBadMappings) {
  const auto g = fixtures::graph(3, {{0, 1}, {1, 2}}, {0, 1, 2});
  const pm::Template t({0, 1, 2}, {{0, 1}, {1, 2}});
  const std::vector<pm::VertexId> ok{0, 1, 2};
  const std::vector<pm::VertexId> wrong_label{2, 1, 0};
  const std::vector<pm::VertexId> repeated{0, 1, 0};
  const std::vector<pm::VertexId> short_map{0, 1};
  EXPECT_TRUE(pm::verify_match(g, t, ok));
  EXPECT_FALSE(pm::verify_match(g, t, wrong_label));
  EXPECT_FALSE(pm::verify_match(g, t, repeated));
  EXPECT_FALSE(pm::verify_match(g, t, short_map));
}

TEST(Enumeration, EmptySolutionHasNoMatches) {
  const auto c = pm::count_matches(pm::SolutionSubgraph{}, fixtures::triangle());
  EXPECT_EQ(c.mappings, 0u);
  EXPECT_EQ(c.embeddings, 0u);
}

}  // namespace
