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

#ifndef PRUNEMATCH_GRAPH_HPP
#define PRUNEMATCH_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "prunematch/types.hpp"

namespace prunematch {

/// Undirected simple vertex-labeled graph in CSR form. Every undirected edge
/// is stored as two directed arcs; adjacency lists are sorted. The arc index
/// ("slot") is the position in targets() and is used by the per-edge state.
class LabeledGraph {
 public:
  LabeledGraph() : offsets_(1, 0) {}

  /// Builds from an arbitrary edge list: both directions are materialized,
  /// self-edges and duplicates are dropped. `labels` may be empty (all 0).
  static LabeledGraph from_edges(std::size_t n,
                                 std::span<const std::pair<VertexId, VertexId>> edges,
                                 std::vector<Label> labels = {});

  /// Assembles a graph from raw CSR arrays, validating every invariant.
  static LabeledGraph from_csr(std::vector<std::uint64_t> offsets,
                               std::vector<VertexId> targets,
                               std::vector<Label> labels);

  [[nodiscard]] std::size_t vertex_count() const { return labels_.size(); }
  /// Number of directed arcs (twice the undirected edge count).
  [[nodiscard]] std::size_t arc_count() const { return targets_.size(); }
  [[nodiscard]] std::size_t edge_count() const { return targets_.size() / 2; }

  [[nodiscard]] std::span<const VertexId> neighbors(VertexId v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  [[nodiscard]] std::size_t degree(VertexId v) const {
    return static_cast<std::size_t>(offsets_[v + 1] - offsets_[v]);
  }
  [[nodiscard]] std::uint64_t first_slot(VertexId v) const { return offsets_[v]; }
  [[nodiscard]] std::uint64_t end_slot(VertexId v) const { return offsets_[v + 1]; }
  [[nodiscard]] VertexId slot_target(std::uint64_t slot) const { return targets_[slot]; }
  /// Arc index of the opposite direction of `slot`.
  [[nodiscard]] std::uint64_t reverse_slot(std::uint64_t slot) const { return reverse_[slot]; }

  /// Arc index of (v, u), or end_slot(v) if absent. O(log deg).
  [[nodiscard]] std::uint64_t find_slot(VertexId v, VertexId u) const;
  [[nodiscard]] bool has_edge(VertexId v, VertexId u) const {
    return find_slot(v, u) != end_slot(v);
  }

  [[nodiscard]] Label label(VertexId v) const { return labels_[v]; }
  [[nodiscard]] std::span<const Label> labels() const { return labels_; }
  /// max label + 1 (0 for an empty graph).
  [[nodiscard]] std::size_t label_count() const;

  [[nodiscard]] std::span<const std::uint64_t> offsets() const { return offsets_; }
  [[nodiscard]] std::span<const VertexId> targets() const { return targets_; }

  /// Returns a copy carrying new labels (size must equal vertex_count()).
  [[nodiscard]] LabeledGraph with_labels(std::vector<Label> labels) const;

  /// Full scan of the CSR invariants; throws GraphError on the first violation.
  void validate() const;

  friend bool operator==(const LabeledGraph& a, const LabeledGraph& b) {
    return a.offsets_ == b.offsets_ && a.targets_ == b.targets_ && a.labels_ == b.labels_;
  }

 private:
  void build_reverse();

  std::vector<std::uint64_t> offsets_;
  std::vector<std::uint64_t> reverse_;
  std::vector<VertexId> targets_;
  std::vector<Label> labels_;
};

struct EdgeListResult {
  LabeledGraph graph;
  std::size_t dropped_self_edges = 0;
  std::size_t dropped_duplicates = 0;
  /// Only filled when ids were compacted: new id -> id found in the file.
  std::vector<std::uint64_t> original_ids;
};

/// Reads "src dst" lines ('#' comments). With `compact`, ids are renumbered
/// densely in order of first appearance; otherwise n = max id + 1.
EdgeListResult load_edge_list(const std::filesystem::path& path, bool compact = false);

/// Reads "vertex_id label_id" lines into `g`'s label store. Missing vertices
/// get label 0.
LabeledGraph load_labels(const std::filesystem::path& path, const LabeledGraph& g);

void write_edge_list(const std::filesystem::path& path, const LabeledGraph& g);
void write_labels(const std::filesystem::path& path, const LabeledGraph& g);

struct GraphStats {
  std::size_t d_max = 0;
  double d_avg = 0.0;
  double d_sdev = 0.0;
  std::map<Label, std::size_t> label_freq;

  [[nodiscard]] std::size_t frequency(Label l) const {
    const auto it = label_freq.find(l);
    return it == label_freq.end() ? 0 : it->second;
  }
};

GraphStats compute_stats(const LabeledGraph& g);

/// Induced view of the active part of a graph: new vertex i is old vertex
/// global_ids[i].
struct InducedGraph {
  LabeledGraph graph;
  std::vector<VertexId> global_ids;
};

/// Keeps active vertices and the arcs flagged live in both directions.
/// `vertex_active` has one entry per vertex, `arc_live` one per arc.
InducedGraph induce_subgraph(const LabeledGraph& g,
                             std::span<const std::uint8_t> vertex_active,
                             std::span<const std::uint8_t> arc_live);

}  // namespace prunematch

#endif  // PRUNEMATCH_GRAPH_HPP
