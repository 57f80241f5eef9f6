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

#ifndef PRUNEMATCH_SCENARIOS_HPP
#define PRUNEMATCH_SCENARIOS_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "prunematch/cache.hpp"
#include "prunematch/graph.hpp"
#include "prunematch/pipeline.hpp"
#include "prunematch/state.hpp"
#include "prunematch/template.hpp"

namespace prunematch {

/// Starting state valid for every connected template over the same vertices
/// whose edges are a subset of `envelope`'s: a vertex keeps q while some live
/// neighbor can play an envelope neighbor of q.
VertexStates candidate_set(const LabeledGraph& g, const Template& envelope);

/// Incremental querying: a template edited one edge at a time, each revision
/// pruned from the previous result where that is sound.
class Session {
 public:
  Session(std::shared_ptr<const LabeledGraph> g, Template initial, PruneConfig cfg = {});

  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  /// Throws TemplateError (and leaves the session unchanged) for an edge that
  /// exists, references unknown vertices, or would disconnect the template.
  const SolutionSubgraph& add_edge(TemplateVertex a, TemplateVertex b);
  const SolutionSubgraph& remove_edge(TemplateVertex a, TemplateVertex b);

  [[nodiscard]] const SolutionSubgraph& result() const { return result_; }
  [[nodiscard]] const Template& current() const { return current_; }
  [[nodiscard]] const Template& envelope() const { return envelope_; }
  [[nodiscard]] std::size_t revision() const { return revision_; }
  [[nodiscard]] const std::vector<PhaseReport>& last_trail() const { return trail_; }
  [[nodiscard]] const WorkReuseCache& cache() const { return cache_; }
  [[nodiscard]] const LabeledGraph& graph() const { return *graph_; }

 private:
  void run(Template next, VertexStates start);
  const VertexStates& envelope_candidates();

  std::shared_ptr<const LabeledGraph> graph_;
  PruneConfig cfg_;
  WorkReuseCache cache_;
  Template current_;
  Template envelope_;
  std::optional<VertexStates> envelope_states_;
  VertexStates states_;
  SolutionSubgraph result_;
  std::vector<PhaseReport> trail_;
  std::size_t revision_ = 0;
};

struct ExploreOptions {
  /// Largest number of template edges to drop.
  std::size_t max_k = 2;
  PruneConfig prune;
};

struct VariantResult {
  std::vector<TemplateEdge> removed;
  std::size_t vertices = 0;
  std::size_t edges = 0;
};

struct ExploreResult {
  /// Smallest k with a non-empty variant, if any up to max_k.
  std::optional<std::size_t> k;
  /// Every connected variant tried at the final level.
  std::vector<VariantResult> variants;
  /// Union of the non-empty variants' solutions at level k.
  SolutionSubgraph merged;
  std::size_t variants_tried = 0;
};

/// Drops 0, 1, ... max_k template edges until some variant has matches.
ExploreResult exploratory_search(std::shared_ptr<const LabeledGraph> g, const Template& t,
                                 const ExploreOptions& opt = {});

}  // namespace prunematch

#endif  // PRUNEMATCH_SCENARIOS_HPP
