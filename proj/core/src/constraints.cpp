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

#include "prunematch/constraints.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace prunematch {

namespace {

using Key = std::tuple<std::size_t, Label, TemplateVertex>;

struct Keyer {
  const Template& t;
  const LabelFrequency& freq;
  [[nodiscard]] Key operator()(TemplateVertex q) const {
    return {freq(t.label(q)), t.label(q), q};
  }
};

using EdgeSet = std::set<TemplateEdge>;

TemplateEdge norm(TemplateVertex a, TemplateVertex b) {
  return a < b ? TemplateEdge{a, b} : TemplateEdge{b, a};
}

EdgeSet cycle_edges(const std::vector<TemplateVertex>& c) {
  EdgeSet s;
  for (std::size_t i = 0; i < c.size(); ++i) s.insert(norm(c[i], c[(i + 1) % c.size()]));
  return s;
}

// Connected components of an edge set, each as a sorted edge list.
std::vector<std::vector<TemplateEdge>> components(const EdgeSet& edges, std::size_t n) {
  std::vector<std::uint32_t> comp(n, 0xffffffffU);
  std::vector<std::vector<TemplateVertex>> adj(n);
  for (const auto& [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::uint32_t next = 0;
  for (const auto& [a, b] : edges) {
    if (comp[a] != 0xffffffffU) continue;
    std::vector<TemplateVertex> stack{a};
    comp[a] = next;
    while (!stack.empty()) {
      const TemplateVertex v = stack.back();
      stack.pop_back();
      for (TemplateVertex w : adj[v]) {
        if (comp[w] == 0xffffffffU) {
          comp[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  std::vector<std::vector<TemplateEdge>> out(next);
  for (const auto& e : edges) out[comp[e.first]].push_back(e);
  return out;
}

// Whether an automorphism carries sequence `a` onto `b` position by position.
bool maps_onto(const Template& t, const std::vector<TemplateVertex>& a,
               const std::vector<TemplateVertex>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (t.label(a[i]) != t.label(b[i])) return false;
  }
  const auto r = extends_to_automorphism(t, a, b);
  return r.value_or(false);
}

bool cycles_equivalent(const Template& t, const std::vector<TemplateVertex>& x,
                       const std::vector<TemplateVertex>& y) {
  if (x.size() != y.size()) return false;
  const std::size_t L = x.size();
  std::vector<TemplateVertex> img(L);
  for (std::size_t shift = 0; shift < L; ++shift) {
    for (int dir = 0; dir < 2; ++dir) {
      for (std::size_t j = 0; j < L; ++j) {
        img[j] = dir == 0 ? y[(shift + j) % L] : y[(shift + L - j) % L];
      }
      if (maps_onto(t, x, img)) return true;
    }
  }
  return false;
}

bool edge_covered(const TemplateSymmetry& sym, const std::set<std::uint32_t>& covered,
                  TemplateVertex a, TemplateVertex b) {
  return covered.count(sym.orbit_of(a, b)) != 0 || covered.count(sym.orbit_of(b, a)) != 0;
}

}  // namespace

const char* to_string(ConstraintKind k) {
  switch (k) {
    case ConstraintKind::cycle:
      return "cycle";
    case ConstraintKind::path:
      return "path";
    case ConstraintKind::tds:
      return "tds";
  }
  return "?";
}

std::string RootedWalk::fingerprint() const {
  std::string s = cyclic ? "C" : "A";
  for (const auto& st : steps) {
    s += '|';
    s += std::to_string(st.q);
    s += ':';
    s += std::to_string(st.label);
    s += ':';
    s += std::to_string(st.coincide);
    for (auto d : st.distinct_from) {
      s += ',';
      s += std::to_string(d);
    }
  }
  return s;
}

LabelFrequency frequency_of(const GraphStats& stats) {
  return [map = stats.label_freq](Label l) {
    const auto it = map.find(l);
    return it == map.end() ? std::size_t{0} : it->second;
  };
}

RootedWalk make_walk(const Template& t, std::span<const TemplateVertex> sequence, bool cyclic) {
  RootedWalk w;
  w.cyclic = cyclic;
  std::vector<std::int32_t> first(t.vertex_count(), -1);
  for (std::size_t r = 0; r < sequence.size(); ++r) {
    const TemplateVertex q = sequence[r];
    if (r > 0 && !t.has_edge(sequence[r - 1], q)) {
      throw TemplateError("walk hop is not a template edge");
    }
    WalkStep st;
    st.q = q;
    st.label = t.label(q);
    if (first[q] >= 0) {
      st.coincide = first[q];
    } else {
      const std::int32_t pred_first = r > 0 ? first[sequence[r - 1]] : -1;
      for (TemplateVertex p = 0; p < t.vertex_count(); ++p) {
        if (p != q && first[p] >= 0 && first[p] != pred_first && t.label(p) == t.label(q)) {
          st.distinct_from.push_back(static_cast<std::uint32_t>(first[p]));
        }
      }
      std::sort(st.distinct_from.begin(), st.distinct_from.end());
      first[q] = static_cast<std::int32_t>(r);
    }
    w.steps.push_back(std::move(st));
  }
  if (cyclic && (w.steps.size() < 2 || w.steps.back().coincide != 0)) {
    throw TemplateError("cyclic walk must end at its origin");
  }
  return w;
}

RootedWalk closed_cover_walk(const Template& t, std::span<const TemplateEdge> edges,
                             TemplateVertex root, const LabelFrequency& freq,
                             std::optional<TemplateVertex> last) {
  const Keyer key{t, freq};
  const std::size_t n = t.vertex_count();
  std::vector<std::vector<TemplateVertex>> adj(n);
  for (const auto& [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& l : adj) {
    std::sort(l.begin(), l.end(), [&](auto x, auto y) { return key(x) < key(y); });
  }
  std::vector<std::uint8_t> visited(n, 0);
  EdgeSet traversed;
  std::vector<TemplateVertex> seq{root};
  visited[root] = 1;

  auto dfs = [&](auto&& self, TemplateVertex v, TemplateVertex parent) -> void {
    for (TemplateVertex w : adj[v]) {
      if (visited[w] != 0 && w != parent && traversed.insert(norm(v, w)).second) {
        seq.push_back(w);
        seq.push_back(v);
      }
    }
    for (;;) {
      TemplateVertex best = kNoVertex;
      std::size_t best_back = 0;
      for (TemplateVertex w : adj[v]) {
        if (visited[w] != 0) continue;
        std::size_t back = 0;
        for (TemplateVertex x : adj[w]) back += visited[x];
        if (best == kNoVertex || back > best_back) {
          best = w;
          best_back = back;
        }
      }
      if (best == kNoVertex) break;
      visited[best] = 1;
      traversed.insert(norm(v, best));
      seq.push_back(best);
      self(self, best, v);
      seq.push_back(v);
    }
  };
  dfs(dfs, root, kNoVertex);

  if (last && (seq.size() < 2 || seq[seq.size() - 2] != *last)) {
    seq.push_back(*last);
    seq.push_back(root);
  }
  if (seq.size() == 1) throw TemplateError("cover walk needs at least one edge");
  return make_walk(t, seq, true);
}

ConstraintSet generate_constraints(const Template& t, const TemplateAnalysis& a,
                                   const GraphStats& stats) {
  return generate_constraints(t, a, frequency_of(stats));
}

ConstraintSet generate_constraints(const Template& t, const TemplateAnalysis& a,
                                   const LabelFrequency& freq) {
  const Keyer key{t, freq};
  const std::size_t n = t.vertex_count();
  ConstraintSet out;
  out.symmetry = compute_symmetry(t);
  const auto& sym = out.symmetry;

  auto key_seq = [&](const RootedWalk& w) {
    std::vector<Key> ks;
    for (const auto& s : w.steps) ks.push_back(key(s.q));
    return ks;
  };

  // Cycles, oriented from their lowest-key vertex toward the lower-key neighbor.
  std::vector<NonLocalConstraint> cycles;
  std::vector<std::vector<TemplateVertex>> class_reps;
  for (const auto& c : a.simple_cycles) {
    const std::size_t L = c.size();
    std::size_t s = 0;
    for (std::size_t i = 1; i < L; ++i) {
      if (key(c[i]) < key(c[s])) s = i;
    }
    const bool forward = key(c[(s + 1) % L]) < key(c[(s + L - 1) % L]);
    std::vector<TemplateVertex> seq(L);
    for (std::size_t j = 0; j < L; ++j) seq[j] = forward ? c[(s + j) % L] : c[(s + L - j) % L];

    bool dup = false;
    if (sym.exact) {
      for (std::size_t k = 0; k < class_reps.size() && !dup; ++k) {
        if (cycles_equivalent(t, class_reps[k], seq)) {
          ++cycles[k].merged;
          dup = true;
        }
      }
    }
    if (dup) continue;

    NonLocalConstraint nc;
    nc.kind = ConstraintKind::cycle;
    std::vector<std::size_t> rot(L);
    for (std::size_t i = 0; i < L; ++i) rot[i] = i;
    std::stable_sort(rot.begin(), rot.end(),
                     [&](auto x, auto y) { return key(seq[x]) < key(seq[y]); });
    std::set<std::uint32_t> covered;
    for (std::size_t i : rot) {
      const TemplateVertex head = seq[i];
      const TemplateVertex prev = seq[(i + L - 1) % L];
      if (edge_covered(sym, covered, head, prev)) continue;
      covered.insert(sym.orbit_of(head, prev));
      std::vector<TemplateVertex> w;
      for (std::size_t j = 0; j <= L; ++j) w.push_back(seq[(i + j) % L]);
      nc.roots.push_back(make_walk(t, w, true));
    }
    class_reps.push_back(seq);
    cycles.push_back(std::move(nc));
  }

  // Paths between same-label vertices at least three hops apart.
  std::vector<NonLocalConstraint> paths;
  std::vector<std::vector<TemplateVertex>> path_seqs;
  EdgeSet path_edges;
  for (const auto& [label, members] : a.repeated_label_groups) {
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        TemplateVertex u = members[i];
        TemplateVertex w = members[j];
        if (a.distance[u][w] < 3) continue;
        if (key(w) < key(u)) std::swap(u, w);
        std::vector<TemplateVertex> seq{u};
        while (seq.back() != w) {
          const TemplateVertex cur = seq.back();
          for (TemplateVertex x : t.neighbors(cur)) {
            if (a.distance[x][w] + 1 == a.distance[cur][w]) {
              seq.push_back(x);
              break;
            }
          }
        }
        EdgeSet pe;
        for (std::size_t k = 0; k + 1 < seq.size(); ++k) pe.insert(norm(seq[k], seq[k + 1]));
        bool inside_cycle = false;
        for (const auto& c : a.simple_cycles) {
          const auto ce = cycle_edges(c);
          if (std::includes(ce.begin(), ce.end(), pe.begin(), pe.end())) {
            inside_cycle = true;
            break;
          }
        }
        if (inside_cycle) continue;
        path_edges.insert(pe.begin(), pe.end());

        bool dup = false;
        if (sym.exact) {
          std::vector<TemplateVertex> rev(seq.rbegin(), seq.rend());
          for (const auto& prior : path_seqs) {
            if (maps_onto(t, prior, seq) || maps_onto(t, prior, rev)) {
              dup = true;
              break;
            }
          }
        }
        if (dup) continue;
        path_seqs.push_back(seq);
        NonLocalConstraint nc;
        nc.kind = ConstraintKind::path;
        nc.roots.push_back(make_walk(t, seq, false));
        paths.push_back(std::move(nc));
      }
    }
  }

  // Template-driven search over unions of constraint edges.
  std::vector<NonLocalConstraint> partial;
  const EdgeSet all(t.edges().begin(), t.edges().end());
  std::vector<std::vector<TemplateEdge>> seen_sets;
  auto add_partial = [&](const EdgeSet& es) {
    for (auto& comp : components(es, n)) {
      if (comp.size() == all.size()) continue;
      if (std::find(seen_sets.begin(), seen_sets.end(), comp) != seen_sets.end()) continue;
      seen_sets.push_back(comp);
      TemplateVertex root = comp.front().first;
      for (const auto& [x, y] : comp) {
        if (key(x) < key(root)) root = x;
        if (key(y) < key(root)) root = y;
      }
      NonLocalConstraint nc;
      nc.kind = ConstraintKind::tds;
      nc.roots.push_back(closed_cover_walk(t, comp, root, freq));
      partial.push_back(std::move(nc));
    }
  };
  if (!a.is_edge_monocyclic) {
    EdgeSet shared;
    for (const auto& c : a.simple_cycles) {
      bool shares = false;
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (a.edge_cycle_degree[*t.edge_index(c[i], c[(i + 1) % c.size()])] >= 2) {
          shares = true;
          break;
        }
      }
      if (shares) {
        const auto ce = cycle_edges(c);
        shared.insert(ce.begin(), ce.end());
      }
    }
    add_partial(shared);
  }
  if (a.has_repeated_labels() && !path_edges.empty()) add_partial(path_edges);

  std::sort(partial.begin(), partial.end(), [&](const auto& x, const auto& y) {
    return std::make_pair(x.length(), key_seq(x.walk())) <
           std::make_pair(y.length(), key_seq(y.walk()));
  });

  std::vector<NonLocalConstraint> local;
  for (auto& c : cycles) local.push_back(std::move(c));
  for (auto& p : paths) local.push_back(std::move(p));
  std::stable_sort(local.begin(), local.end(), [&](const auto& x, const auto& y) {
    return std::make_tuple(x.length(), x.kind, key_seq(x.walk())) <
           std::make_tuple(y.length(), y.kind, key_seq(y.walk()));
  });
  for (auto& c : local) out.constraints.push_back(std::move(c));
  for (auto& c : partial) out.constraints.push_back(std::move(c));

  if ((!a.is_edge_monocyclic || a.has_repeated_labels()) && t.edge_count() > 0) {
    NonLocalConstraint nc;
    nc.kind = ConstraintKind::tds;
    nc.mandatory = true;
    std::vector<TemplateEdge> order(t.edges().begin(), t.edges().end());
    for (auto& [x, y] : order) {
      if (key(y) < key(x)) std::swap(x, y);
    }
    std::sort(order.begin(), order.end(), [&](const auto& e1, const auto& e2) {
      return std::make_pair(key(e1.first), key(e1.second)) <
             std::make_pair(key(e2.first), key(e2.second));
    });
    const std::vector<TemplateEdge> every(t.edges().begin(), t.edges().end());
    std::set<std::uint32_t> covered;
    for (const auto& [x, y] : order) {
      if (edge_covered(sym, covered, x, y)) continue;
      covered.insert(sym.orbit_of(x, y));
      nc.roots.push_back(closed_cover_walk(t, every, x, freq, y));
    }
    out.constraints.push_back(std::move(nc));
  }
  return out;
}

std::string walk_to_string(const RootedWalk& w, const LabelNames* names) {
  auto label_text = [&](Label l) {
    if (names != nullptr) {
      for (const auto& [name, id] : *names) {
        if (id == l) return name;
      }
    }
    return std::to_string(l);
  };
  std::string s;
  for (std::size_t r = 0; r < w.steps.size(); ++r) {
    const auto& st = w.steps[r];
    if (r > 0) s += "→";
    s += label_text(st.label);
    const bool closing = w.cyclic && r + 1 == w.steps.size() && st.coincide == 0;
    if (st.coincide >= 0 && !closing) s += "(=" + std::to_string(st.coincide) + ")";
    if (!st.distinct_from.empty()) s += "(distinct)";
  }
  return s;
}

std::string walk_to_string(const NonLocalConstraint& c, const LabelNames* names) {
  if (c.roots.empty()) return "";
  return walk_to_string(c.walk(), names);
}

std::string plan_to_string(const ConstraintSet& k, const LabelNames* names) {
  std::string s;
  for (std::size_t i = 0; i < k.constraints.size(); ++i) {
    const auto& c = k.constraints[i];
    s += std::to_string(i) + " " + to_string(c.kind) + (c.mandatory ? " mandatory" : "") +
         " length=" + std::to_string(c.length()) + " roots=" + std::to_string(c.roots.size());
    if (c.merged > 1) s += " merged=" + std::to_string(c.merged);
    s += " " + walk_to_string(c, names) + "\n";
  }
  return s;
}

ConstraintSet reorder(const ConstraintSet& k, std::span<const std::size_t> order) {
  ConstraintSet out;
  out.symmetry = k.symmetry;
  std::vector<std::uint8_t> used(k.constraints.size(), 0);
  for (std::size_t i : order) {
    if (i >= k.constraints.size()) {
      throw std::invalid_argument("constraint index " + std::to_string(i) + " out of range");
    }
    if (used[i] != 0) {
      throw std::invalid_argument("constraint index " + std::to_string(i) + " repeated");
    }
    used[i] = 1;
    out.constraints.push_back(k.constraints[i]);
  }
  return out;
}

}  // namespace prunematch
