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

#ifndef PRUNEMATCH_PIPELINE_HPP
#define PRUNEMATCH_PIPELINE_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "prunematch/cache.hpp"
#include "prunematch/constraints.hpp"
#include "prunematch/engine.hpp"
#include "prunematch/graph.hpp"
#include "prunematch/lcc.hpp"
#include "prunematch/nlcc.hpp"
#include "prunematch/state.hpp"
#include "prunematch/template.hpp"

namespace prunematch {

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class PhaseKind : std::uint8_t { lcc, nlcc };

struct PhaseReport {
  PhaseKind kind = PhaseKind::lcc;
  std::size_t round = 0;
  /// Plan index of the constraint checked (nlcc phases).
  std::optional<std::size_t> constraint;
  LccReport lcc;
  NlccReport nlcc;
  /// Solution size after the phase.
  std::uint64_t active_vertices = 0;
  std::uint64_t live_edges = 0;
  double seconds = 0.0;
};

/// Single-line JSON rendering of a phase report.
std::string to_json_line(const PhaseReport& r, const ConstraintSet* plan = nullptr);

struct PruneConfig {
  EngineConfig engine;
  bool edge_elimination = true;
  bool work_aggregation = true;
  /// Plan indices to run, in order; default is the generated order.
  std::optional<std::vector<std::size_t>> constraint_order;
  /// Shared across runs over the same graph; not owned.
  WorkReuseCache* cache = nullptr;
  /// Called after every phase.
  std::function<void(const PhaseReport&)> observer;
};

/// The pruned graph: surviving vertices (ascending) with their candidate sets,
/// and surviving edges as (u, v) with u < v, ascending.
struct SolutionSubgraph {
  std::vector<VertexId> vertices;
  std::vector<VertexSet> omega;
  std::vector<std::pair<VertexId, VertexId>> edges;

  [[nodiscard]] bool empty() const { return vertices.empty(); }
  [[nodiscard]] std::size_t vertex_count() const { return vertices.size(); }
  [[nodiscard]] std::size_t edge_count() const { return edges.size(); }
  /// Candidate set of `v`, empty if absent.
  [[nodiscard]] VertexSet candidates(VertexId v) const;

  friend bool operator==(const SolutionSubgraph&, const SolutionSubgraph&) = default;
};

SolutionSubgraph extract_solution(const LabeledGraph& g, const VertexStates& s);

/// Writes vertices.txt ("id q,q,..."), edges.txt ("u v") and manifest.json.
void write_solution(const std::filesystem::path& dir, const SolutionSubgraph& sol,
                    const std::string& manifest_json);

/// Drives local and non-local checks to a fixed point. Each step() runs one
/// phase (the initial local pass, or one constraint followed by local
/// re-checks); checkpoints can be written between steps.
class Pruner {
 public:
  Pruner(std::shared_ptr<const LabeledGraph> g, Template t, PruneConfig cfg = {});
  /// Starts from a given state instead of the label-compatible one.
  Pruner(std::shared_ptr<const LabeledGraph> g, Template t, PruneConfig cfg, VertexStates start,
         std::optional<LabelFrequency> freq = std::nullopt);

  /// Runs one phase; false once the fixed point has been reached.
  bool step();
  void run();

  [[nodiscard]] bool done() const { return pos_.finished; }
  [[nodiscard]] const LabeledGraph& graph() const { return *graph_; }
  [[nodiscard]] std::shared_ptr<const LabeledGraph> graph_ptr() const { return graph_; }
  [[nodiscard]] const Template& templ() const { return templ_; }
  [[nodiscard]] const ConstraintSet& plan() const { return plan_; }
  [[nodiscard]] const VertexStates& states() const { return states_; }
  [[nodiscard]] const std::vector<PhaseReport>& trail() const { return trail_; }
  [[nodiscard]] const PruneConfig& config() const { return cfg_; }
  /// Rounds of non-local checks started so far.
  [[nodiscard]] std::size_t rounds() const;
  [[nodiscard]] SolutionSubgraph result() const { return extract_solution(*graph_, states_); }

  /// Only valid between steps.
  void save_checkpoint(const std::filesystem::path& file) const;
  /// Rebuilds the surviving graph and rebalances it over cfg.engine.workers.
  /// Edge elimination and aggregation flags come from the checkpoint.
  static Pruner restore(const std::filesystem::path& file, PruneConfig cfg);

 private:
  struct Position {
    bool initial_done = false;
    std::size_t next = 0;
    std::size_t round = 0;
    bool round_changed = false;
    bool round_hits = false;
    bool fresh = false;
    bool finished = false;
  };

  void setup(std::optional<LabelFrequency> freq, std::shared_ptr<const Partition> part);
  void record(PhaseReport r);
  void end_round();

  std::shared_ptr<const LabeledGraph> graph_;
  Template templ_;
  PruneConfig cfg_;
  VertexStates states_;
  std::vector<std::pair<Label, std::uint64_t>> freq_table_;
  ConstraintSet plan_;
  std::unique_ptr<LccEngine> lcc_engine_;
  std::unique_ptr<NlccEngine> nlcc_engine_;
  Position pos_;
  std::vector<PhaseReport> trail_;
};

/// Convenience: full run over a graph the caller keeps alive.
SolutionSubgraph prune(const LabeledGraph& g, const Template& t, const PruneConfig& cfg = {});

}  // namespace prunematch

#endif  // PRUNEMATCH_PIPELINE_HPP
