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

#ifndef PRUNEMATCH_CACHE_HPP
#define PRUNEMATCH_CACHE_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "prunematch/constraints.hpp"
#include "prunematch/graph.hpp"
#include "prunematch/state.hpp"

namespace prunematch {

/// Remembers walk outcomes per (source vertex, walk) across pruning runs over
/// the same background graph.
///
/// A success is stored with the vertices of one completed walk and is only
/// trusted while all of them (and the arcs between consecutive ones) are still
/// in the solution. A failure stays valid until the next epoch: within an
/// epoch the solution only shrinks, so a walk that failed cannot succeed.
class WorkReuseCache {
 public:
  enum class Verdict : std::uint8_t { miss, pass, fail };

  struct Stats {
    std::uint64_t lookups = 0;
    std::uint64_t pass_hits = 0;
    std::uint64_t fail_hits = 0;
    /// Successes whose witness no longer survives.
    std::uint64_t stale = 0;
  };

  /// Stable small id for a walk shape.
  std::uint32_t intern(const RootedWalk& w);

  Verdict lookup(VertexId v, std::uint32_t walk_id, const RootedWalk& w, const LabeledGraph& g,
                 const VertexStates& s);
  /// `witness` holds one graph vertex per first occurrence of a template
  /// vertex along the walk, in walk order.
  void record_pass(VertexId v, std::uint32_t walk_id, std::vector<VertexId> witness);
  void record_fail(VertexId v, std::uint32_t walk_id);

  /// Starts a new epoch; failures from earlier epochs are ignored.
  void new_epoch() { ++epoch_; }
  void clear();

  [[nodiscard]] std::size_t size() const { return entries_.size(); }
  [[nodiscard]] std::size_t walk_count() const { return ids_.size(); }
  [[nodiscard]] const Stats& stats() const { return stats_; }
  [[nodiscard]] std::uint64_t epoch() const { return epoch_; }

 private:
  struct Entry {
    bool pass = false;
    std::uint64_t epoch = 0;
    std::vector<VertexId> witness;
  };

  static std::uint64_t key(VertexId v, std::uint32_t walk_id) {
    return (static_cast<std::uint64_t>(walk_id) << 32) | v;
  }
  static bool witness_holds(const RootedWalk& w, std::span<const VertexId> witness,
                            const LabeledGraph& g, const VertexStates& s);

  std::unordered_map<std::string, std::uint32_t> ids_;
  std::unordered_map<std::uint64_t, Entry> entries_;
  std::uint64_t epoch_ = 0;
  Stats stats_;
};

}  // namespace prunematch

#endif  // PRUNEMATCH_CACHE_HPP
