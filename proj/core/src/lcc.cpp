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

#include "prunematch/lcc.hpp"

#include <map>
#include <memory>

namespace prunematch {

bool LccReport::changed() const {
  for (const auto& it : per_iteration) {
    if (it.changed()) return true;
  }
  return false;
}

std::uint64_t LccReport::alive_messages() const {
  std::uint64_t c = 0;
  for (const auto& it : per_iteration) c += it.alive_messages;
  return c;
}

std::vector<LocalRequirement> local_requirements(const Template& t) {
  std::vector<LocalRequirement> req(t.vertex_count());
  for (TemplateVertex q = 0; q < t.vertex_count(); ++q) {
    req[q].adj = t.adjacency(q);
    std::map<Label, VertexSet> by_label;
    req[q].adj.for_each([&](TemplateVertex p) { by_label[t.label(p)].insert(p); });
    for (const auto& [label, members] : by_label) {
      if (members.size() >= 2) req[q].groups.push_back(members);
    }
  }
  return req;
}

VertexSet eta(const Template& t, const VertexSet& sender, const VertexSet& receiver) {
  VertexSet reach;
  receiver.for_each([&](TemplateVertex q) { reach |= t.adjacency(q); });
  return sender & reach;
}

namespace {

bool in_messaging_set(const VertexStates& s, std::uint64_t slot, const LccOptions& opt) {
  return !opt.edge_elimination || s.edge_live[slot] != 0;
}

}  // namespace

LccReport lcc_fixed_point(const LabeledGraph& g, const Template& t, VertexStates& s,
                          LccEngine& engine, const LccOptions& opt) {
  check_states(g, s);
  const auto req = local_requirements(t);
  const bool needs_edges = t.edge_count() > 0;
  LccReport report;

  std::vector<std::uint8_t> kill(g.arc_count(), 0);
  for (;;) {
    LccIteration it;
    ++s.stamp;
    const std::uint32_t stamp = s.stamp;
    const auto active = s.active_vertices();
    it.active_vertices = active.size();
    it.live_arcs = s.live_arc_count(g);

    engine.do_traversal(active, [&](LccEngine::Context& ctx, LccEngine::VisitorT& vis) {
      const VertexId v = vis.target;
      if (vis.type == MessageType::init) {
        for (std::uint64_t a = g.first_slot(v); a < g.end_slot(v); ++a) {
          if (!in_messaging_set(s, a, opt)) continue;
          ctx.push({g.slot_target(a), MessageType::alive,
                    AliveMessage{s.omega[v], g.reverse_slot(a), stamp, s.edge_live[a] != 0}});
        }
        return;
      }
      const auto& m = vis.payload;
      if (!m.live || s.alpha[v] == 0 || s.edge_live[m.slot] == 0) return;
      s.nbr_omega[m.slot] = m.omega;
      s.nbr_stamp[m.slot] = m.stamp;
    });
    const auto stats = engine.run_until_quiescence();
    report.delivery += stats;
    it.alive_messages = stats.pushed_of(MessageType::alive);

    // Decide arc removals from each side's own view, then apply symmetrically,
    // so the outcome does not depend on vertex order.
    for (VertexId v : active) {
      VertexSet reach;
      s.omega[v].for_each([&](TemplateVertex q) { reach |= req[q].adj; });
      for (std::uint64_t a = g.first_slot(v); a < g.end_slot(v); ++a) {
        if (s.edge_live[a] == 0) continue;
        kill[a] = (s.nbr_stamp[a] != stamp || !s.nbr_omega[a].intersects(reach)) ? 1 : 0;
      }
    }
    for (VertexId v : active) {
      for (std::uint64_t a = g.first_slot(v); a < g.end_slot(v); ++a) {
        if (kill[a] == 0) continue;
        kill[a] = 0;
        if (s.kill_edge(g, a)) ++it.edges_eliminated;
      }
    }

    std::vector<VertexId> dying;
    for (VertexId v : active) {
      VertexSet seen;
      bool any_live = false;
      for (std::uint64_t a = g.first_slot(v); a < g.end_slot(v); ++a) {
        if (s.edge_live[a] == 0) continue;
        any_live = true;
        seen |= s.nbr_omega[a];
      }
      VertexSet keep;
      s.omega[v].for_each([&](TemplateVertex q) {
        if (!req[q].adj.is_subset_of(seen)) return;
        for (const auto& group : req[q].groups) {
          std::size_t have = 0;
          for (std::uint64_t a = g.first_slot(v); a < g.end_slot(v) && have < group.size();
               ++a) {
            if (s.edge_live[a] != 0 && s.nbr_omega[a].intersects(group)) ++have;
          }
          if (have < group.size()) return;
        }
        keep.insert(q);
      });
      it.candidates_removed += s.omega[v].size() - keep.size();
      s.omega[v] = keep;
      if (keep.empty() || (needs_edges && !any_live)) dying.push_back(v);
    }
    for (VertexId v : dying) {
      it.candidates_removed += s.omega[v].size();
      it.edges_eliminated += s.deactivate(g, v);
      ++it.vertices_eliminated;
    }

    ++report.iterations;
    report.per_iteration.push_back(it);
    if (!it.changed()) break;
  }
  return report;
}

LccReport lcc_fixed_point(const LabeledGraph& g, const Template& t, VertexStates& s,
                          const EngineConfig& cfg, const LccOptions& opt) {
  auto part = std::make_shared<const Partition>(Partition::hashed(g.vertex_count(), cfg.workers));
  LccEngine engine(part, cfg);
  return lcc_fixed_point(g, t, s, engine, opt);
}

}  // namespace prunematch
