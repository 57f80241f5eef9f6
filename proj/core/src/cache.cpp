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

#include "prunematch/cache.hpp"

namespace prunematch {

std::uint32_t WorkReuseCache::intern(const RootedWalk& w) {
  const auto [it, inserted] = ids_.try_emplace(w.fingerprint(), static_cast<std::uint32_t>(ids_.size()));
  return it->second;
}

bool WorkReuseCache::witness_holds(const RootedWalk& w, std::span<const VertexId> witness,
                                   const LabeledGraph& g, const VertexStates& s) {
  std::size_t vars = 0;
  VertexId prev = kNoVertex;
  for (const auto& st : w.steps) {
    std::size_t var = 0;
    if (st.coincide >= 0) {
      // Positions map to vars through their first occurrence; count again.
      std::size_t k = 0;
      for (std::size_t r = 0; r < static_cast<std::size_t>(st.coincide); ++r) {
        if (w.steps[r].coincide < 0) ++k;
      }
      var = k;
    } else {
      var = vars++;
    }
    if (var >= witness.size()) return false;
    const VertexId x = witness[var];
    if (x >= s.vertex_count() || s.alpha[x] == 0 || !s.omega[x].contains(st.q)) return false;
    if (prev != kNoVertex) {
      const auto slot = g.find_slot(prev, x);
      if (slot == g.end_slot(prev) || s.edge_live[slot] == 0) return false;
    }
    prev = x;
  }
  return true;
}

WorkReuseCache::Verdict WorkReuseCache::lookup(VertexId v, std::uint32_t walk_id,
                                               const RootedWalk& w, const LabeledGraph& g,
                                               const VertexStates& s) {
  ++stats_.lookups;
  const auto it = entries_.find(key(v, walk_id));
  if (it == entries_.end()) return Verdict::miss;
  auto& e = it->second;
  if (e.pass) {
    if (witness_holds(w, e.witness, g, s)) {
      ++stats_.pass_hits;
      return Verdict::pass;
    }
    ++stats_.stale;
    entries_.erase(it);
    return Verdict::miss;
  }
  if (e.epoch == epoch_) {
    ++stats_.fail_hits;
    return Verdict::fail;
  }
  entries_.erase(it);
  return Verdict::miss;
}

void WorkReuseCache::record_pass(VertexId v, std::uint32_t walk_id,
                                 std::vector<VertexId> witness) {
  entries_[key(v, walk_id)] = Entry{true, epoch_, std::move(witness)};
}

void WorkReuseCache::record_fail(VertexId v, std::uint32_t walk_id) {
  entries_[key(v, walk_id)] = Entry{false, epoch_, {}};
}

void WorkReuseCache::clear() {
  entries_.clear();
  stats_ = {};
}

}  // namespace prunematch
