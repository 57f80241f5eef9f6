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


// Randomized property checks against the brute-force matcher.

#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "prunematch/enumeration.hpp"
#include "prunematch/lcc.hpp"
#include "prunematch/pipeline.hpp"
#include "prunematch/scenarios.hpp"
#include "prunematch/testkit.hpp"

namespace pm = prunematch;
namespace tk = prunematch::testkit;

namespace {

constexpr std::uint64_t kCases = 60;

tk::Instance instance(std::uint64_t seed) {
  std::mt19937_64 rng(seed * 7919);
  tk::InstanceParams p;
  p.vertices = 10 + rng() % 25;
  p.edge_probability = 0.1 + 0.05 * static_cast<double>(rng() % 6);
  p.labels = 2 + rng() % 3;
  p.template_vertices = 3 + rng() % 4;
  p.extra_edge_probability = 0.3 + 0.1 * static_cast<double>(rng() % 6);
  p.source = seed % 3 == 0 ? tk::TemplateSource::independent : tk::TemplateSource::sampled;
  try {
    return tk::random_instance(p, rng());
  } catch (const std::runtime_error&) {
    p.source = tk::TemplateSource::independent;
    return tk::random_instance(p, rng());
  }
}

bool contains(const pm::SolutionSubgraph& big, const pm::SolutionSubgraph& small) {
  for (std::size_t i = 0; i < small.vertices.size(); ++i) {
    const auto v = small.vertices[i];
    if (!big.candidates(v).contains(0) && big.candidates(v).empty()) return false;
    if (!small.omega[i].is_subset_of(big.candidates(v))) return false;
  }
  return std::includes(big.edges.begin(), big.edges.end(), small.edges.begin(), small.edges.end());
}

class Property : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(Property, GraphInvariants) {
  const auto inst = instance(GetParam());
  const auto& g = inst.graph;
  EXPECT_NO_THROW(g.validate());
  const auto stats = pm::compute_stats(g);
  std::size_t sum = 0;
  for (const auto& [l, n] : stats.label_freq) sum += n;
  EXPECT_EQ(sum, g.vertex_count());
  EXPECT_DOUBLE_EQ(stats.d_avg, static_cast<double>(g.arc_count()) / static_cast<double>(g.vertex_count()));

  std::vector<std::uint8_t> active(g.vertex_count());
  for (std::size_t v = 0; v < active.size(); ++v) active[v] = v % 2;
  std::vector<std::uint8_t> live(g.arc_count(), 1);
  const auto ind = pm::induce_subgraph(g, active, live);
  EXPECT_NO_THROW(ind.graph.validate());
  for (pm::VertexId v = 0; v < ind.graph.vertex_count(); ++v) {
    EXPECT_EQ(ind.graph.label(v), g.label(ind.global_ids[v]));
  }
}

TEST_P(Property, ConstraintInvariants) {
  const auto inst = instance(GetParam());
  const auto& t = inst.templ;
  const auto a = pm::analyze(t);
  const auto stats = pm::compute_stats(inst.graph);
  const auto k = pm::generate_constraints(t, a, stats);
  const auto again = pm::generate_constraints(t, a, stats);
  ASSERT_EQ(k.constraints.size(), again.constraints.size());
  bool seen_tds = false;
  for (std::size_t i = 0; i < k.constraints.size(); ++i) {
    const auto& c = k.constraints[i];
    EXPECT_EQ(c.roots, again.constraints[i].roots);
    if (c.kind == pm::ConstraintKind::tds) {
      seen_tds = true;
    } else {
      EXPECT_FALSE(seen_tds) << "cycle/path after a full walk";
    }
    for (const auto& w : c.roots) {
      for (std::size_t s = 1; s < w.steps.size(); ++s) {
        EXPECT_TRUE(t.has_edge(w.steps[s - 1].q, w.steps[s].q));
      }
    }
    if (c.mandatory) {
      std::set<pm::TemplateEdge> used;
      const auto& w = c.walk();
      for (std::size_t s = 1; s < w.steps.size(); ++s) {
        used.emplace(std::min(w.steps[s - 1].q, w.steps[s].q), std::max(w.steps[s - 1].q, w.steps[s].q));
      }
      EXPECT_EQ(used.size(), t.edge_count());
    }
  }
  if (a.is_edge_monocyclic && !a.has_repeated_labels()) {
    for (const auto& c : k.constraints) EXPECT_EQ(c.kind, pm::ConstraintKind::cycle);
  }
}

TEST_P(Property, LocalChecksAreMonotoneSafeAndIdempotent) {
  const auto inst = instance(GetParam());
  const auto& g = inst.graph;
  const auto& t = inst.templ;
  auto s = pm::init_states(g, t);
  const auto rep = pm::lcc_fixed_point(g, t, s);
  for (std::size_t i = 1; i < rep.per_iteration.size(); ++i) {
    EXPECT_LE(rep.per_iteration[i].active_vertices, rep.per_iteration[i - 1].active_vertices);
    EXPECT_LE(rep.per_iteration[i].live_arcs, rep.per_iteration[i - 1].live_arcs);
  }
  for (const auto& it : rep.per_iteration) EXPECT_EQ(it.alive_messages, it.live_arcs);
  // Recall: the oracle union survives.
  const auto oracle = tk::oracle_enumerate(g, t).as_solution();
  EXPECT_TRUE(contains(pm::extract_solution(g, s), oracle));
  // Symmetry.
  for (pm::VertexId v = 0; v < g.vertex_count(); ++v) {
    for (auto a = g.first_slot(v); a < g.end_slot(v); ++a) {
      const bool here = s.alpha[v] && s.edge_live[a];
      const auto u = g.slot_target(a);
      const bool there = s.alpha[u] && s.edge_live[g.reverse_slot(a)];
      EXPECT_EQ(here, there);
    }
  }
  // Idempotence.
  auto again = s;
  const auto rep2 = pm::lcc_fixed_point(g, t, again);
  EXPECT_FALSE(rep2.changed());
  EXPECT_TRUE(again.same_solution(s));
}

TEST_P(Property, PruneIsExactAndStable) {
  const auto inst = instance(GetParam());
  auto g = fixtures::shared(inst.graph);
  const auto& t = inst.templ;
  const auto oracle = tk::oracle_enumerate(*g, t);
  const auto want = oracle.as_solution();

  pm::Pruner p(g, t);
  std::uint64_t last_v = g->vertex_count();
  std::uint64_t last_e = g->edge_count();
  while (p.step()) {
    const auto& r = p.trail().back();
    EXPECT_LE(r.active_vertices, last_v);
    EXPECT_LE(r.live_edges, last_e);
    last_v = r.active_vertices;
    last_e = r.live_edges;
  }
  const auto got = p.result();
  ASSERT_EQ(got, want);

  // Every mandatory source keeps exactly the vertices the oracle maps it to.
  for (const auto& c : p.plan().constraints) {
    if (!c.mandatory) continue;
    for (pm::VertexId v = 0; v < g->vertex_count(); ++v) {
      EXPECT_EQ(got.candidates(v).contains(c.source()), oracle.roles[v].contains(c.source()));
    }
  }

  // Aggregation and edge elimination are transparent.
  pm::PruneConfig plain;
  plain.work_aggregation = false;
  plain.edge_elimination = false;
  EXPECT_EQ(pm::prune(*g, t, plain), want);

  // Worker count and seed do not matter.
  pm::PruneConfig par;
  par.engine.workers = 1 + GetParam() % 4;
  par.engine.seed = GetParam();
  EXPECT_EQ(pm::prune(*g, t, par), want);

  // Pruning the pruned graph changes nothing.
  std::vector<std::uint8_t> active(g->vertex_count(), 0);
  for (auto v : got.vertices) active[v] = 1;
  std::vector<std::uint8_t> live(g->arc_count(), 0);
  for (const auto& [u, v] : got.edges) {
    const auto s = g->find_slot(u, v);
    live[s] = 1;
    live[g->reverse_slot(s)] = 1;
  }
  const auto ind = pm::induce_subgraph(*g, active, live);
  const auto again = pm::prune(ind.graph, t);
  EXPECT_EQ(again.vertex_count(), got.vertex_count());
  EXPECT_EQ(again.edge_count(), got.edge_count());
}

TEST_P(Property, EnumerationCoversSolution) {
  const auto inst = instance(GetParam());
  const auto& t = inst.templ;
  const auto sol = pm::prune(inst.graph, t);
  std::set<pm::VertexId> vs;
  std::set<std::pair<pm::VertexId, pm::VertexId>> es;
  std::uint64_t n = 0;
  pm::enumerate(sol, t, [&](std::span<const pm::VertexId> phi) {
    ++n;
    EXPECT_TRUE(pm::verify_match(inst.graph, t, phi));
    vs.insert(phi.begin(), phi.end());
    for (const auto& [a, b] : t.edges()) es.emplace(std::min(phi[a], phi[b]), std::max(phi[a], phi[b]));
    return true;
  });
  EXPECT_EQ(std::vector<pm::VertexId>(vs.begin(), vs.end()), sol.vertices);
  EXPECT_EQ(es.size(), sol.edge_count());
  const auto c = pm::count_matches(sol, t);
  EXPECT_EQ(c.mappings, n);
  EXPECT_EQ(c.mappings, c.embeddings * c.automorphisms);
}

TEST_P(Property, CandidateSetCoversVariants) {
  const auto inst = instance(GetParam());
  const auto& t = inst.templ;
  const auto cs = pm::candidate_set(inst.graph, t);
  auto check = [&](const pm::Template& v) {
    const auto o = tk::oracle_enumerate(inst.graph, v).as_solution();
    for (std::size_t i = 0; i < o.vertices.size(); ++i) {
      ASSERT_TRUE(cs.alpha[o.vertices[i]]);
      EXPECT_TRUE(o.omega[i].is_subset_of(cs.omega[o.vertices[i]]));
    }
  };
  check(t);
  for (const auto& [a, b] : t.edges()) {
    try {
      check(t.without_edge(a, b));
    } catch (const pm::TemplateError&) {
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Random, Property, ::testing::Range<std::uint64_t>(1, kCases + 1));

}  // namespace
