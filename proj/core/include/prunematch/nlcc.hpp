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

#ifndef PRUNEMATCH_NLCC_HPP
#define PRUNEMATCH_NLCC_HPP

#include <cstddef>
#include <cstdint>

#include <boost/container/small_vector.hpp>

#include "prunematch/cache.hpp"
#include "prunematch/constraints.hpp"
#include "prunematch/engine.hpp"
#include "prunematch/graph.hpp"
#include "prunematch/state.hpp"
#include "prunematch/template.hpp"

namespace prunematch {

/// A walk in flight, or a completion notice (ack).
struct Token {
  std::uint16_t root = 0;
  /// Walk position of the receiving vertex. For acks: 0 tells the source its
  /// walk completed, 1 tells the closing partner.
  std::uint16_t pos = 0;
  /// Template vertex an ack confirms.
  TemplateVertex confirm = 0;
  /// Receiver's arc toward the sender.
  std::uint64_t slot = 0;
  /// Graph vertices bound so far: the origin, plus every later first
  /// occurrence when the walk needs them.
  boost::container::small_vector<VertexId, 6> vals;
};

using NlccEngine = Engine<Token>;

struct NlccOptions {
  bool edge_elimination = true;
  /// Drop walks that can no longer differ from one already forwarded.
  bool work_aggregation = true;
};

struct NlccReport {
  std::size_t roots = 0;
  std::uint64_t sources_initiated = 0;
  /// (source, root) pairs whose walk completed.
  std::uint64_t sources_satisfied = 0;
  std::uint64_t rejected = 0;
  std::uint64_t aggregated = 0;
  std::uint64_t cache_pass_hits = 0;
  std::uint64_t cache_fail_hits = 0;
  /// Some root's partner could not be checked because of a cache hit.
  bool coverage_reduced = false;

  std::uint64_t candidates_removed = 0;
  std::uint64_t vertices_eliminated = 0;
  std::uint64_t edges_eliminated = 0;
  DeliveryStats delivery;

  [[nodiscard]] bool changed() const {
    return candidates_removed + vertices_eliminated + edges_eliminated != 0;
  }
  [[nodiscard]] std::uint64_t forwarded() const { return delivery.pushed_of(MessageType::forward); }
};

/// Runs all walks of one constraint from every eligible source and removes the
/// candidates, vertices and edges it disproves. `cache` may be null.
NlccReport check_constraint(const LabeledGraph& g, const Template& t, const NonLocalConstraint& c,
                            const TemplateSymmetry& sym, VertexStates& s, NlccEngine& engine,
                            const NlccOptions& opt = {}, WorkReuseCache* cache = nullptr);

}  // namespace prunematch

#endif  // PRUNEMATCH_NLCC_HPP
