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

#include <benchmark/benchmark.h>

#include <map>
#include <utility>
#include <memory>

#include "prunematch/enumeration.hpp"
#include "prunematch/lcc.hpp"
#include "prunematch/pipeline.hpp"
#include "prunematch/testkit.hpp"

namespace pm = prunematch;

namespace {

// Degree-labeled when `labeled`, otherwise every vertex carries label 0.
const pm::LabeledGraph& rmat_graph(unsigned scale, bool labeled = true) {
  static std::map<std::pair<unsigned, bool>, pm::LabeledGraph> cache;
  auto it = cache.find({scale, labeled});
  if (it == cache.end()) {
    pm::testkit::RmatParams p;
    p.scale = scale;
    p.seed = 7;
    auto g = pm::testkit::rmat_generate(p);
    if (labeled) g = g.with_labels(pm::testkit::degree_labels(g));
    it = cache.emplace(std::make_pair(scale, labeled), std::move(g)).first;
  }
  return it->second;
}

pm::Template clique(std::size_t k, pm::Label label) {
  std::vector<pm::TemplateEdge> e;
  for (pm::TemplateVertex a = 0; a < k; ++a) {
    for (pm::TemplateVertex b = a + 1; b < k; ++b) e.emplace_back(a, b);
  }
  return pm::Template(std::vector<pm::Label>(k, label), e);
}

void BM_LocalChecks(benchmark::State& state) {
  const auto& g = rmat_graph(static_cast<unsigned>(state.range(0)));
  const auto t = pm::parse_template_text("v 0 4; v 1 5; v 2 6; e 0 1; e 1 2");
  for (auto _ : state) {
    auto s = pm::init_states(g, t);
    auto r = pm::lcc_fixed_point(g, t, s);
    benchmark::DoNotOptimize(r.iterations);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * g.arc_count()));
}
BENCHMARK(BM_LocalChecks)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_PruneTriangle(benchmark::State& state) {
  const auto& g = rmat_graph(static_cast<unsigned>(state.range(0)), false);
  const auto t = clique(3, 0);
  pm::PruneConfig cfg;
  cfg.work_aggregation = state.range(1) != 0;
  for (auto _ : state) {
    auto sol = pm::prune(g, t, cfg);
    benchmark::DoNotOptimize(sol.vertices.data());
  }
}
BENCHMARK(BM_PruneTriangle)
    ->Args({8, 1})
    ->Args({8, 0})
    ->Args({10, 1})
    ->Unit(benchmark::kMillisecond);

void BM_CountAfterPrune(benchmark::State& state) {
  const auto& g = rmat_graph(10, false);
  const auto t = clique(3, 0);
  const auto sol = pm::prune(g, t);
  for (auto _ : state) {
    auto mc = pm::count_matches(sol, t);
    benchmark::DoNotOptimize(mc.mappings);
  }
}
BENCHMARK(BM_CountAfterPrune)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
