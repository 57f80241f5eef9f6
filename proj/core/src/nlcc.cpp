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

#include "prunematch/nlcc.hpp"

#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace prunematch {

namespace {

using Vals = boost::container::small_vector<VertexId, 6>;

// Per-position data derived from a walk once per run.
struct CompiledRoot {
  const RootedWalk* walk = nullptr;
  std::vector<std::uint32_t> var;        // binding index of each position
  std::vector<std::uint8_t> fresh;       // position binds a new vertex
  std::vector<std::uint8_t> merge;       // aggregation can drop tokens here
  std::vector<std::vector<std::uint32_t>> identity;  // bindings still needed later
  std::uint32_t cache_id = 0;
  bool reduced = false;
};

CompiledRoot compile(const RootedWalk& w) {
  CompiledRoot cr;
  cr.walk = &w;
  const std::size_t P = w.steps.size();
  cr.var.resize(P);
  cr.fresh.resize(P);
  std::uint32_t next = 0;
  for (std::size_t r = 0; r < P; ++r) {
    const auto& st = w.steps[r];
    cr.fresh[r] = st.coincide < 0 ? 1 : 0;
    cr.var[r] = st.coincide < 0 ? next++ : cr.var[static_cast<std::size_t>(st.coincide)];
  }
  // Binding k is needed after position r if a later step refers to it.
  std::vector<std::size_t> last_use(next, 0);
  for (std::size_t r = 0; r < P; ++r) {
    const auto& st = w.steps[r];
    if (st.coincide >= 0) {
      auto& u = last_use[cr.var[static_cast<std::size_t>(st.coincide)]];
      u = std::max(u, r);
    }
    for (auto p : st.distinct_from) last_use[cr.var[p]] = std::max(last_use[cr.var[p]], r);
  }
  cr.merge.assign(P, 0);
  cr.identity.resize(P);
  std::uint32_t known = 0;  // bindings made before position r
  for (std::size_t r = 0; r < P; ++r) {
    const std::uint32_t own = cr.var[r];
    std::size_t candidates = 0;
    for (std::uint32_t k = 0; k < known; ++k) {
      if (k == own) continue;
      ++candidates;
      if (k == 0 || last_use[k] > r) cr.identity[r].push_back(k);
    }
    cr.merge[r] = (r > 0 && r + 1 < P && cr.identity[r].size() < candidates) ? 1 : 0;
    if (cr.fresh[r] != 0) ++known;
  }
  return cr;
}

bool needs_bindings(const RootedWalk& w) {
  for (const auto& st : w.steps) {
    if (st.coincide > 0) return true;
    for (auto p : st.distinct_from) {
      if (p != 0) return true;
    }
  }
  return false;
}

struct TauKey {
  VertexId v = 0;
  std::uint32_t where = 0;  // root << 16 | position
  Vals vals;
  friend bool operator==(const TauKey&, const TauKey&) = default;
};

struct TauHash {
  std::size_t operator()(const TauKey& k) const {
    std::uint64_t h = (static_cast<std::uint64_t>(k.v) << 32) ^ k.where;
    h *= 0x9e3779b97f4a7c15ULL;
    for (VertexId x : k.vals) {
      h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

inline std::uint64_t pair_key(std::uint64_t hi, std::uint64_t lo) { return (hi << 32) | lo; }

struct Scratch {
  std::unordered_set<TauKey, TauHash> tau;
  std::unordered_set<std::uint64_t> support;    // arc << 32 | pair orbit
  std::unordered_set<std::uint64_t> satisfied;  // root << 32 | source
  std::unordered_map<std::uint64_t, std::vector<VertexId>> witness;
  std::uint64_t initiated = 0;
  std::uint64_t rejected = 0;
  std::uint64_t aggregated = 0;
};

}  // namespace

NlccReport check_constraint(const LabeledGraph& g, const Template& t, const NonLocalConstraint& c,
                            const TemplateSymmetry& sym, VertexStates& s, NlccEngine& engine,
                            const NlccOptions& opt, WorkReuseCache* cache) {
  check_states(g, s);
  if (c.roots.size() > 0xffff) throw TemplateError("constraint has too many roots");
  // Support records pack an arc index into 32 bits.
  if (g.arc_count() >= (std::uint64_t{1} << 32)) throw GraphError("graph has too many arcs");
  NlccReport rep;
  rep.roots = c.roots.size();

  bool keep_all = cache != nullptr;
  for (const auto& w : c.roots) keep_all = keep_all || needs_bindings(w);
  std::vector<CompiledRoot> roots;
  roots.reserve(c.roots.size());
  for (const auto& w : c.roots) {
    roots.push_back(compile(w));
    if (cache != nullptr) roots.back().cache_id = cache->intern(w);
  }

  const std::size_t n = g.vertex_count();
  std::vector<VertexSet> confirmed(n);
  std::vector<Scratch> scratch(engine.workers());

  // Cached outcomes replace walks before anything is sent.
  std::unordered_set<std::uint64_t> skip;
  const auto active = s.active_vertices();
  if (cache != nullptr) {
    for (VertexId v : active) {
      for (std::size_t i = 0; i < roots.size(); ++i) {
        const auto& w = *roots[i].walk;
        if (!s.omega[v].contains(w.source())) continue;
        const auto verdict = cache->lookup(v, roots[i].cache_id, w, g, s);
        if (verdict == WorkReuseCache::Verdict::miss) continue;
        skip.insert(pair_key(i, v));
        if (verdict == WorkReuseCache::Verdict::pass) {
          ++rep.cache_pass_hits;
          ++rep.sources_satisfied;
          confirmed[v].insert(w.source());
          roots[i].reduced = true;
        } else {
          ++rep.cache_fail_hits;
        }
      }
    }
  }

  auto messaging = [&](std::uint64_t a) { return !opt.edge_elimination || s.edge_live[a] != 0; };

  auto advance = [&](NlccEngine::Context& ctx, VertexId v, std::uint16_t i, std::size_t r,
                     const Vals& vals) {
    const auto& cr = roots[i];
    const auto& nx = cr.walk->steps[r + 1];
    const auto pos = static_cast<std::uint16_t>(r + 1);
    if (nx.coincide >= 0) {
      const VertexId target = vals[keep_all ? cr.var[static_cast<std::size_t>(nx.coincide)] : 0];
      const auto a = g.find_slot(v, target);
      if (a == g.end_slot(v) || !messaging(a)) return;
      ctx.push({target, MessageType::forward, Token{i, pos, 0, g.reverse_slot(a), vals}});
      return;
    }
    for (std::uint64_t a = g.first_slot(v); a < g.end_slot(v); ++a) {
      if (!messaging(a)) continue;
      ctx.push({g.slot_target(a), MessageType::forward, Token{i, pos, 0, g.reverse_slot(a), vals}});
    }
  };

  auto complete_at_source = [&](Scratch& sc, VertexId v, std::uint16_t i, const Vals& vals) {
    sc.satisfied.insert(pair_key(i, v));
    if (cache != nullptr) sc.witness.try_emplace(pair_key(i, v), vals.begin(), vals.end());
  };

  engine.do_traversal(active, [&](NlccEngine::Context& ctx, NlccEngine::VisitorT& vis) {
    const VertexId v = vis.target;
    auto& sc = scratch[ctx.worker()];
    auto& tok = vis.payload;

    if (vis.type == MessageType::init) {
      for (std::size_t i = 0; i < roots.size(); ++i) {
        const auto& w = *roots[i].walk;
        if (!s.omega[v].contains(w.source())) continue;
        if (!skip.empty() && skip.count(pair_key(i, v)) != 0) continue;
        ++sc.initiated;
        Vals vals{v};
        advance(ctx, v, static_cast<std::uint16_t>(i), 0, vals);
      }
      return;
    }

    const auto& cr = roots[tok.root];
    const auto& steps = cr.walk->steps;
    if (vis.type == MessageType::ack) {
      confirmed[v].insert(tok.confirm);
      if (tok.pos == 0) complete_at_source(sc, v, tok.root, tok.vals);
      return;
    }

    const std::size_t r = tok.pos;
    const auto& st = steps[r];
    auto bound = [&](std::uint32_t position) {
      return tok.vals[keep_all ? cr.var[position] : 0];
    };
    bool ok = s.alpha[v] != 0 && s.edge_live[tok.slot] != 0 && s.omega[v].contains(st.q);
    if (ok && st.coincide >= 0) ok = bound(static_cast<std::uint32_t>(st.coincide)) == v;
    if (ok) {
      for (auto p : st.distinct_from) {
        if (bound(p) == v) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) {
      ++sc.rejected;
      return;
    }

    const std::size_t L = steps.size() - 1;
    if (r == L) {
      const VertexId sender = g.slot_target(tok.slot);
      if (cr.walk->cyclic) {
        // Back at the origin: the walk holds. Record which template edge the
        // closing arc played and tell the sender.
        const TemplateVertex src = steps[0].q;
        const TemplateVertex prev = steps[L - 1].q;
        confirmed[v].insert(src);
        sc.support.insert((static_cast<std::uint64_t>(tok.slot) << 32) | sym.orbit_of(src, prev));
        complete_at_source(sc, v, tok.root, tok.vals);
        ctx.push({sender, MessageType::ack, Token{tok.root, 1, prev, 0, {}}});
      } else {
        confirmed[v].insert(st.q);
        if (keep_all && cr.fresh[r] != 0) tok.vals.push_back(v);
        const VertexId origin = tok.vals[0];
        Token ack{tok.root, 0, steps[0].q, 0, {}};
        if (cache != nullptr) ack.vals = tok.vals;
        ctx.push({origin, MessageType::ack, std::move(ack)});
      }
      return;
    }

    if (opt.work_aggregation && cr.merge[r] != 0) {
      TauKey key{v, (static_cast<std::uint32_t>(tok.root) << 16) | static_cast<std::uint32_t>(r),
                 {}};
      for (auto k : cr.identity[r]) key.vals.push_back(tok.vals[k]);
      if (!sc.tau.insert(std::move(key)).second) {
        ++sc.aggregated;
        return;
      }
    }
    if (keep_all && cr.fresh[r] != 0) tok.vals.push_back(v);
    advance(ctx, v, tok.root, r, tok.vals);
  });
  rep.delivery = engine.run_until_quiescence();

  std::unordered_set<std::uint64_t> support;
  for (auto& sc : scratch) {
    rep.sources_initiated += sc.initiated;
    rep.rejected += sc.rejected;
    rep.aggregated += sc.aggregated;
    rep.sources_satisfied += sc.satisfied.size();
    support.merge(sc.support);
  }

  if (cache != nullptr) {
    for (VertexId v : active) {
      for (std::size_t i = 0; i < roots.size(); ++i) {
        const auto& w = *roots[i].walk;
        const auto k = pair_key(i, v);
        if (!s.omega[v].contains(w.source()) || skip.count(k) != 0) continue;
        bool done = false;
        for (auto& other : scratch) {
          auto it = other.witness.find(k);
          if (it != other.witness.end()) {
            cache->record_pass(v, roots[i].cache_id, std::move(it->second));
            done = true;
            break;
          }
        }
        if (!done) cache->record_fail(v, roots[i].cache_id);
      }
    }
  }

  // What this constraint can disprove.
  VertexSet covered_q;
  std::unordered_set<std::uint32_t> covered_pairs;
  for (const auto& cr : roots) {
    const auto& w = *cr.walk;
    covered_q.insert(w.source());
    if (cr.reduced) {
      rep.coverage_reduced = true;
      continue;
    }
    covered_q.insert(w.partner());
    if (w.cyclic) covered_pairs.insert(sym.orbit_of(w.source(), w.partner()));
  }
  covered_q = sym.close(covered_q);

  for (VertexId v : active) {
    const VertexSet drop = (s.omega[v] & covered_q) - sym.close(confirmed[v]);
    if (drop.empty()) continue;
    rep.candidates_removed += drop.size();
    s.omega[v] -= drop;
    if (s.omega[v].empty()) {
      rep.edges_eliminated += s.deactivate(g, v);
      ++rep.vertices_eliminated;
    }
  }

  if (!covered_pairs.empty()) {
    for (VertexId x : active) {
      if (s.alpha[x] == 0) continue;
      for (std::uint64_t a = g.first_slot(x); a < g.end_slot(x); ++a) {
        const VertexId y = g.slot_target(a);
        if (y < x || s.edge_live[a] == 0 || s.alpha[y] == 0) continue;
        const std::uint64_t ra = g.reverse_slot(a);
        bool keep = false;
        s.omega[x].for_each([&](TemplateVertex qx) {
          if (keep) return;
          (s.omega[y] & t.adjacency(qx)).for_each([&](TemplateVertex qy) {
            if (keep) return;
            const auto o1 = sym.orbit_of(qx, qy);
            const auto o2 = sym.orbit_of(qy, qx);
            if (covered_pairs.count(o1) == 0 && covered_pairs.count(o2) == 0) {
              keep = true;
            } else if (support.count((a << 32) | o1) != 0 || support.count((ra << 32) | o2) != 0) {
              keep = true;
            }
          });
        });
        if (!keep && s.kill_edge(g, a)) ++rep.edges_eliminated;
      }
    }
  }

  if (t.edge_count() > 0) {
    for (VertexId v : active) {
      if (s.alpha[v] == 0) continue;
      bool any = false;
      for (std::uint64_t a = g.first_slot(v); a < g.end_slot(v) && !any; ++a) {
        any = s.edge_live[a] != 0;
      }
      if (!any) {
        rep.candidates_removed += s.omega[v].size();
        s.deactivate(g, v);
        ++rep.vertices_eliminated;
      }
    }
  }
  return rep;
}

}  // namespace prunematch
