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

#include "prunematch/state.hpp"

#include <unordered_map>

namespace prunematch {

std::size_t VertexStates::active_vertex_count() const {
  std::size_t c = 0;
  for (auto a : alpha) c += a != 0 ? 1 : 0;
  return c;
}

std::size_t VertexStates::live_arc_count(const LabeledGraph& g) const {
  std::size_t c = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (alpha[v] == 0) continue;
    for (std::uint64_t s = g.first_slot(v); s < g.end_slot(v); ++s) c += edge_live[s];
  }
  return c;
}

std::size_t VertexStates::live_edge_count(const LabeledGraph& g) const {
  std::size_t c = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (alpha[v] == 0) continue;
    for (std::uint64_t s = g.first_slot(v); s < g.end_slot(v); ++s) {
      const VertexId u = g.slot_target(s);
      if (v < u && edge_live[s] != 0 && alpha[u] != 0 && edge_live[g.reverse_slot(s)] != 0) ++c;
    }
  }
  return c;
}

std::vector<VertexId> VertexStates::active_vertices() const {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < alpha.size(); ++v) {
    if (alpha[v] != 0) out.push_back(v);
  }
  return out;
}

std::size_t VertexStates::deactivate(const LabeledGraph& g, VertexId v) {
  alpha[v] = 0;
  omega[v] = VertexSet{};
  std::size_t killed = 0;
  for (std::uint64_t s = g.first_slot(v); s < g.end_slot(v); ++s) {
    if (kill_edge(g, s)) ++killed;
  }
  return killed;
}

bool VertexStates::kill_edge(const LabeledGraph& g, std::uint64_t slot) {
  if (edge_live[slot] == 0) return false;
  edge_live[slot] = 0;
  edge_live[g.reverse_slot(slot)] = 0;
  return true;
}

bool VertexStates::same_solution(const VertexStates& o) const {
  return alpha == o.alpha && omega == o.omega && edge_live == o.edge_live;
}

VertexStates init_states(const LabeledGraph& g, const Template& t) {
  std::unordered_map<Label, VertexSet> by_label;
  for (TemplateVertex q = 0; q < t.vertex_count(); ++q) by_label[t.label(q)].insert(q);

  VertexStates s;
  const std::size_t n = g.vertex_count();
  s.alpha.assign(n, 0);
  s.omega.assign(n, VertexSet{});
  s.edge_live.assign(g.arc_count(), 0);
  s.nbr_omega.assign(g.arc_count(), VertexSet{});
  s.nbr_stamp.assign(g.arc_count(), 0);
  for (VertexId v = 0; v < n; ++v) {
    const auto it = by_label.find(g.label(v));
    if (it == by_label.end()) continue;
    s.alpha[v] = 1;
    s.omega[v] = it->second;
  }
  for (VertexId v = 0; v < n; ++v) {
    if (s.alpha[v] == 0) continue;
    for (std::uint64_t a = g.first_slot(v); a < g.end_slot(v); ++a) s.edge_live[a] = 1;
  }
  return s;
}

void check_states(const LabeledGraph& g, const VertexStates& s) {
  if (s.alpha.size() != g.vertex_count() || s.omega.size() != g.vertex_count() ||
      s.edge_live.size() != g.arc_count() || s.nbr_omega.size() != g.arc_count() ||
      s.nbr_stamp.size() != g.arc_count()) {
    throw GraphError("vertex state does not match graph dimensions");
  }
}

}  // namespace prunematch
