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

#include "prunematch/scenarios.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace prunematch {

VertexStates candidate_set(const LabeledGraph& g, const Template& envelope) {
  VertexStates s = init_states(g, envelope);
  const bool needs_edges = envelope.edge_count() > 0;
  for (bool changed = true; changed;) {
    changed = false;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      if (s.alpha[v] == 0) continue;
      VertexSet reach;
      s.omega[v].for_each([&](TemplateVertex q) { reach |= envelope.adjacency(q); });
      VertexSet seen;
      bool any = false;
      for (std::uint64_t a = g.first_slot(v); a < g.end_slot(v); ++a) {
        if (s.edge_live[a] == 0) continue;
        const VertexId u = g.slot_target(a);
        if (s.alpha[u] == 0 || !s.omega[u].intersects(reach)) {
          s.kill_edge(g, a);
          changed = true;
          continue;
        }
        any = true;
        seen |= s.omega[u];
      }
      VertexSet keep;
      s.omega[v].for_each([&](TemplateVertex q) {
        if (envelope.degree(q) == 0 || envelope.adjacency(q).intersects(seen)) keep.insert(q);
      });
      if (keep != s.omega[v]) {
        s.omega[v] = keep;
        changed = true;
      }
      if (keep.empty() || (needs_edges && !any)) {
        s.deactivate(g, v);
        changed = true;
      }
    }
  }
  return s;
}

Session::Session(std::shared_ptr<const LabeledGraph> g, Template initial, PruneConfig cfg)
    : graph_(std::move(g)), cfg_(std::move(cfg)), envelope_(initial) {
  cfg_.cache = &cache_;
  cfg_.constraint_order.reset();
  run(initial, envelope_candidates());
}

const VertexStates& Session::envelope_candidates() {
  if (!envelope_states_) envelope_states_ = candidate_set(*graph_, envelope_);
  return *envelope_states_;
}

void Session::run(Template next, VertexStates start) {
  Pruner p(graph_, next, cfg_, std::move(start));
  p.run();
  current_ = std::move(next);
  states_ = p.states();
  result_ = p.result();
  trail_ = p.trail();
}

const SolutionSubgraph& Session::add_edge(TemplateVertex a, TemplateVertex b) {
  Template next = current_.with_edge(a, b);
  if (!envelope_.has_edge(a, b)) {
    envelope_ = envelope_.with_edge(a, b);
    envelope_states_.reset();
  }
  // Every match of the new template matches the old one, so the old state
  // bounds vertices and candidates. The new edge's image may have been pruned,
  // so edges between survivors that could play it come back.
  VertexStates start = states_;
  const auto& g = *graph_;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (start.alpha[v] == 0) continue;
    VertexSet reach;
    start.omega[v].for_each([&](TemplateVertex q) { reach |= next.adjacency(q); });
    for (std::uint64_t s = g.first_slot(v); s < g.end_slot(v); ++s) {
      const VertexId u = g.slot_target(s);
      if (start.alpha[u] != 0 && start.omega[u].intersects(reach)) start.edge_live[s] = 1;
    }
  }
  cache_.new_epoch();
  run(std::move(next), std::move(start));
  ++revision_;
  return result_;
}

const SolutionSubgraph& Session::remove_edge(TemplateVertex a, TemplateVertex b) {
  Template next = current_.without_edge(a, b);
  cache_.new_epoch();
  run(std::move(next), envelope_candidates());
  ++revision_;
  return result_;
}

namespace {

bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

void merge_into(SolutionSubgraph& acc, const SolutionSubgraph& s) {
  std::map<VertexId, VertexSet> om;
  for (std::size_t i = 0; i < acc.vertices.size(); ++i) om[acc.vertices[i]] |= acc.omega[i];
  for (std::size_t i = 0; i < s.vertices.size(); ++i) om[s.vertices[i]] |= s.omega[i];
  std::set<std::pair<VertexId, VertexId>> edges(acc.edges.begin(), acc.edges.end());
  edges.insert(s.edges.begin(), s.edges.end());
  acc.vertices.clear();
  acc.omega.clear();
  for (const auto& [v, o] : om) {
    acc.vertices.push_back(v);
    acc.omega.push_back(o);
  }
  acc.edges.assign(edges.begin(), edges.end());
}

}  // namespace

ExploreResult exploratory_search(std::shared_ptr<const LabeledGraph> g, const Template& t,
                                 const ExploreOptions& opt) {
  ExploreResult out;
  WorkReuseCache cache;
  PruneConfig cfg = opt.prune;
  cfg.constraint_order.reset();
  if (cfg.cache == nullptr) cfg.cache = &cache;
  // Every variant's edges are a subset of t's.
  const VertexStates start = candidate_set(*g, t);
  const std::vector<TemplateEdge> edges(t.edges().begin(), t.edges().end());

  for (std::size_t k = 0; k <= std::min(opt.max_k, edges.size()); ++k) {
    std::vector<VariantResult> level;
    SolutionSubgraph merged;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    do {
      std::vector<TemplateEdge> kept;
      std::vector<TemplateEdge> removed;
      for (std::size_t e = 0; e < edges.size(); ++e) {
        if (std::find(idx.begin(), idx.end(), e) != idx.end()) {
          removed.push_back(edges[e]);
        } else {
          kept.push_back(edges[e]);
        }
      }
      std::optional<Template> variant;
      try {
        variant.emplace(std::vector<Label>(t.labels().begin(), t.labels().end()), kept);
      } catch (const TemplateError&) {
        continue;  // disconnected
      }
      cfg.cache->new_epoch();
      Pruner p(g, *variant, cfg, start);
      p.run();
      const auto sol = p.result();
      ++out.variants_tried;
      level.push_back({removed, sol.vertex_count(), sol.edge_count()});
      if (!sol.empty()) merge_into(merged, sol);
    } while (k > 0 && next_combination(idx, edges.size()));
    if (!merged.empty()) {
      out.k = k;
      out.variants = std::move(level);
      out.merged = std::move(merged);
      return out;
    }
    out.variants = std::move(level);
  }
  return out;
}

}  // namespace prunematch
