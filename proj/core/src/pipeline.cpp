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

#include "prunematch/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace prunematch {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

nlohmann::json delivery_json(const DeliveryStats& d) {
  nlohmann::json j;
  for (std::size_t i = 0; i < kMessageTypes; ++i) {
    j[std::string("pushed_") + to_string(static_cast<MessageType>(i))] = d.pushed[i];
  }
  j["max_queue_depth"] = d.max_queue_depth;
  j["forced_pushes"] = d.forced_pushes;
  return j;
}

LabelFrequency table_frequency(const std::vector<std::pair<Label, std::uint64_t>>& table) {
  std::map<Label, std::uint64_t> m(table.begin(), table.end());
  return [m = std::move(m)](Label l) {
    const auto it = m.find(l);
    return it == m.end() ? std::size_t{0} : static_cast<std::size_t>(it->second);
  };
}

}  // namespace

std::string to_json_line(const PhaseReport& r, const ConstraintSet* plan) {
  nlohmann::json j;
  j["phase"] = r.kind == PhaseKind::lcc ? "lcc" : "nlcc";
  j["round"] = r.round;
  if (r.constraint) {
    j["constraint"] = *r.constraint;
    if (plan != nullptr && *r.constraint < plan->constraints.size()) {
      const auto& c = plan->constraints[*r.constraint];
      j["kind"] = to_string(c.kind);
      j["mandatory"] = c.mandatory;
      j["walk"] = walk_to_string(c);
    }
    j["roots"] = r.nlcc.roots;
    j["sources"] = r.nlcc.sources_initiated;
    j["satisfied"] = r.nlcc.sources_satisfied;
    j["forwarded"] = r.nlcc.forwarded();
    j["rejected"] = r.nlcc.rejected;
    j["aggregated"] = r.nlcc.aggregated;
    j["cache_pass_hits"] = r.nlcc.cache_pass_hits;
    j["cache_fail_hits"] = r.nlcc.cache_fail_hits;
    j["candidates_removed"] = r.nlcc.candidates_removed;
    j["vertices_eliminated"] = r.nlcc.vertices_eliminated;
    j["edges_eliminated"] = r.nlcc.edges_eliminated;
    j["delivery"] = delivery_json(r.nlcc.delivery);
  }
  nlohmann::json iters = nlohmann::json::array();
  for (const auto& it : r.lcc.per_iteration) {
    iters.push_back({{"active_vertices", it.active_vertices},
                     {"live_arcs", it.live_arcs},
                     {"alive_messages", it.alive_messages},
                     {"vertices_eliminated", it.vertices_eliminated},
                     {"candidates_removed", it.candidates_removed},
                     {"edges_eliminated", it.edges_eliminated}});
  }
  j["lcc_iterations"] = r.lcc.iterations;
  j["lcc"] = std::move(iters);
  j["active_vertices"] = r.active_vertices;
  j["live_edges"] = r.live_edges;
  j["seconds"] = r.seconds;
  return j.dump();
}

VertexSet SolutionSubgraph::candidates(VertexId v) const {
  const auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
  if (it == vertices.end() || *it != v) return {};
  return omega[static_cast<std::size_t>(it - vertices.begin())];
}

SolutionSubgraph extract_solution(const LabeledGraph& g, const VertexStates& s) {
  SolutionSubgraph out;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (s.alpha[v] == 0) continue;
    out.vertices.push_back(v);
    out.omega.push_back(s.omega[v]);
    for (std::uint64_t a = g.first_slot(v); a < g.end_slot(v); ++a) {
      const VertexId u = g.slot_target(a);
      if (v < u && s.edge_live[a] != 0 && s.alpha[u] != 0 && s.edge_live[g.reverse_slot(a)] != 0) {
        out.edges.emplace_back(v, u);
      }
    }
  }
  return out;
}

void write_solution(const std::filesystem::path& dir, const SolutionSubgraph& sol,
                    const std::string& manifest_json) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "vertices.txt");
    if (!out) throw GraphError("cannot write " + (dir / "vertices.txt").string());
    for (std::size_t i = 0; i < sol.vertices.size(); ++i) {
      out << sol.vertices[i] << ' ';
      bool first = true;
      sol.omega[i].for_each([&](TemplateVertex q) {
        if (!first) out << ',';
        out << 'q' << q;
        first = false;
      });
      out << '\n';
    }
  }
  {
    std::ofstream out(dir / "edges.txt");
    if (!out) throw GraphError("cannot write " + (dir / "edges.txt").string());
    for (const auto& [u, v] : sol.edges) out << u << ' ' << v << '\n';
  }
  std::ofstream out(dir / "manifest.json");
  if (!out) throw GraphError("cannot write " + (dir / "manifest.json").string());
  out << manifest_json << '\n';
}

Pruner::Pruner(std::shared_ptr<const LabeledGraph> g, Template t, PruneConfig cfg)
    : graph_(std::move(g)), templ_(std::move(t)), cfg_(std::move(cfg)) {
  states_ = init_states(*graph_, templ_);
  setup(std::nullopt, nullptr);
}

Pruner::Pruner(std::shared_ptr<const LabeledGraph> g, Template t, PruneConfig cfg,
               VertexStates start, std::optional<LabelFrequency> freq)
    : graph_(std::move(g)), templ_(std::move(t)), cfg_(std::move(cfg)), states_(std::move(start)) {
  check_states(*graph_, states_);
  setup(std::move(freq), nullptr);
}

void Pruner::setup(std::optional<LabelFrequency> freq, std::shared_ptr<const Partition> part) {
  if (!freq) {
    const auto stats = compute_stats(*graph_);
    freq_table_.assign(stats.label_freq.begin(), stats.label_freq.end());
  } else {
    // Only the template's labels matter for ordering.
    freq_table_.clear();
    for (Label l : templ_.distinct_labels()) freq_table_.emplace_back(l, (*freq)(l));
  }
  const auto analysis = analyze(templ_);
  plan_ = generate_constraints(templ_, analysis, table_frequency(freq_table_));
  if (cfg_.constraint_order) plan_ = reorder(plan_, *cfg_.constraint_order);

  if (!part) part = std::make_shared<const Partition>(
                 Partition::hashed(graph_->vertex_count(), cfg_.engine.workers));
  lcc_engine_ = std::make_unique<LccEngine>(part, cfg_.engine);
  nlcc_engine_ = std::make_unique<NlccEngine>(part, cfg_.engine);
}

void Pruner::record(PhaseReport r) {
  r.active_vertices = states_.active_vertex_count();
  r.live_edges = states_.live_edge_count(*graph_);
  trail_.push_back(r);
  if (cfg_.observer) cfg_.observer(trail_.back());
}

std::size_t Pruner::rounds() const {
  std::size_t n = 0;
  for (const auto& r : trail_) {
    if (r.kind == PhaseKind::nlcc) n = std::max(n, r.round + 1);
  }
  return n;
}

void Pruner::end_round() {
  const bool again = pos_.round_hits ||
                     (!plan_.has_mandatory() && plan_.constraints.size() > 1 && pos_.round_changed);
  pos_.fresh = pos_.round_hits;
  pos_.round_changed = false;
  pos_.round_hits = false;
  pos_.next = 0;
  if (again) {
    ++pos_.round;
  } else {
    pos_.finished = true;
  }
}

bool Pruner::step() {
  if (pos_.finished) return false;
  const LccOptions lopt{cfg_.edge_elimination};
  if (!pos_.initial_done) {
    const auto t0 = Clock::now();
    PhaseReport r;
    r.kind = PhaseKind::lcc;
    r.lcc = lcc_fixed_point(*graph_, templ_, states_, *lcc_engine_, lopt);
    r.seconds = seconds_since(t0);
    pos_.initial_done = true;
    record(std::move(r));
    if (plan_.constraints.empty() || states_.active_vertex_count() == 0) pos_.finished = true;
    return true;
  }

  const auto t0 = Clock::now();
  const std::size_t idx = pos_.next;
  const auto& c = plan_.constraints[idx];
  PhaseReport r;
  r.kind = PhaseKind::nlcc;
  r.round = pos_.round;
  r.constraint = idx;
  WorkReuseCache* cache = (cfg_.cache != nullptr && !pos_.fresh && !c.mandatory) ? cfg_.cache
                                                                                  : nullptr;
  const NlccOptions nopt{cfg_.edge_elimination, cfg_.work_aggregation};
  r.nlcc = check_constraint(*graph_, templ_, c, plan_.symmetry, states_, *nlcc_engine_, nopt,
                            cache);
  if (r.nlcc.changed()) r.lcc = lcc_fixed_point(*graph_, templ_, states_, *lcc_engine_, lopt);
  r.seconds = seconds_since(t0);
  pos_.round_changed = pos_.round_changed || r.nlcc.changed() || r.lcc.changed();
  pos_.round_hits = pos_.round_hits || r.nlcc.coverage_reduced;
  ++pos_.next;
  record(std::move(r));
  if (states_.active_vertex_count() == 0) {
    pos_.finished = true;
  } else if (pos_.next == plan_.constraints.size()) {
    end_round();
  }
  return true;
}

void Pruner::run() {
  while (step()) {
  }
}

SolutionSubgraph prune(const LabeledGraph& g, const Template& t, const PruneConfig& cfg) {
  // Non-owning handle: the caller keeps g alive for the duration of the call.
  std::shared_ptr<const LabeledGraph> handle(std::shared_ptr<void>(), &g);
  Pruner p(handle, t, cfg);
  p.run();
  return p.result();
}

// Checkpoint layout (little-endian host order):
//   magic[8] version:u32 at_boundary:u8 n:u64
//   template: n0:u32 labels:u32[n0] m0:u32 edges:(u32,u32)[m0]
//   frequencies: k:u32 (label:u32 count:u64)[k]
//   position: initial_done next:u64 round:u64 round_changed round_hits fresh finished
//   flags: edge_elimination aggregation
//   order: present:u8 [k:u64 idx:u64[k]]
//   vertices: count:u64 (id:u32 label:u32 omega:u64[2])[count]
//   arcs: count:u64 (src:u32 dst:u32)[count]
//   checksum: FNV-1a 64 of everything before it
namespace {

constexpr char kMagic[8] = {'P', 'M', 'C', 'H', 'K', 'P', 'T', '\0'};
constexpr std::uint32_t kVersion = 1;

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

class Writer {
 public:
  template <typename T>
  void put(T v) {
    buf_.append(reinterpret_cast<const char*>(&v), sizeof(T));
  }
  void raw(const char* p, std::size_t n) { buf_.append(p, n); }
  [[nodiscard]] const std::string& bytes() const { return buf_; }

 private:
  std::string buf_;
};

class Reader {
 public:
  explicit Reader(const std::string& b) : buf_(b) {}
  template <typename T>
  T get() {
    if (off_ + sizeof(T) > buf_.size()) throw CheckpointError("checkpoint truncated");
    T v;
    std::memcpy(&v, buf_.data() + off_, sizeof(T));
    off_ += sizeof(T);
    return v;
  }
  void raw(char* p, std::size_t n) {
    if (off_ + n > buf_.size()) throw CheckpointError("checkpoint truncated");
    std::memcpy(p, buf_.data() + off_, n);
    off_ += n;
  }
  [[nodiscard]] std::size_t offset() const { return off_; }
  /// Bounds a count read from the file by the bytes left.
  std::uint64_t count(std::uint64_t c, std::size_t unit) {
    if (unit != 0 && c > (buf_.size() - off_) / unit) throw CheckpointError("checkpoint truncated");
    return c;
  }

 private:
  const std::string& buf_;
  std::size_t off_ = 0;
};

}  // namespace

void Pruner::save_checkpoint(const std::filesystem::path& file) const {
  const auto& g = *graph_;
  Writer w;
  w.raw(kMagic, sizeof kMagic);
  w.put<std::uint32_t>(kVersion);
  w.put<std::uint8_t>(1);
  w.put<std::uint64_t>(g.vertex_count());
  w.put<std::uint32_t>(static_cast<std::uint32_t>(templ_.vertex_count()));
  for (TemplateVertex q = 0; q < templ_.vertex_count(); ++q) w.put<std::uint32_t>(templ_.label(q));
  w.put<std::uint32_t>(static_cast<std::uint32_t>(templ_.edge_count()));
  for (const auto& [a, b] : templ_.edges()) {
    w.put<std::uint32_t>(a);
    w.put<std::uint32_t>(b);
  }
  w.put<std::uint32_t>(static_cast<std::uint32_t>(freq_table_.size()));
  for (const auto& [l, f] : freq_table_) {
    w.put<std::uint32_t>(l);
    w.put<std::uint64_t>(f);
  }
  w.put<std::uint8_t>(pos_.initial_done);
  w.put<std::uint64_t>(pos_.next);
  w.put<std::uint64_t>(pos_.round);
  w.put<std::uint8_t>(pos_.round_changed);
  w.put<std::uint8_t>(pos_.round_hits);
  w.put<std::uint8_t>(pos_.fresh);
  w.put<std::uint8_t>(pos_.finished);
  w.put<std::uint8_t>(cfg_.edge_elimination);
  w.put<std::uint8_t>(cfg_.work_aggregation);
  w.put<std::uint8_t>(cfg_.constraint_order.has_value());
  if (cfg_.constraint_order) {
    w.put<std::uint64_t>(cfg_.constraint_order->size());
    for (auto i : *cfg_.constraint_order) w.put<std::uint64_t>(i);
  }
  const auto active = states_.active_vertices();
  w.put<std::uint64_t>(active.size());
  for (VertexId v : active) {
    w.put<std::uint32_t>(v);
    w.put<std::uint32_t>(g.label(v));
    w.put<std::uint64_t>(states_.omega[v].word(0));
    w.put<std::uint64_t>(states_.omega[v].word(1));
  }
  std::vector<std::pair<VertexId, VertexId>> arcs;
  for (VertexId v : active) {
    for (std::uint64_t a = g.first_slot(v); a < g.end_slot(v); ++a) {
      const VertexId u = g.slot_target(a);
      if (states_.edge_live[a] != 0 && states_.alpha[u] != 0) arcs.emplace_back(v, u);
    }
  }
  w.put<std::uint64_t>(arcs.size());
  for (const auto& [v, u] : arcs) {
    w.put<std::uint32_t>(v);
    w.put<std::uint32_t>(u);
  }
  const auto sum = fnv1a(w.bytes());
  w.put<std::uint64_t>(sum);

  const auto tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CheckpointError("cannot write " + tmp);
    out.write(w.bytes().data(), static_cast<std::streamsize>(w.bytes().size()));
    if (!out) throw CheckpointError("cannot write " + tmp);
  }
  std::filesystem::rename(tmp, file);
}

Pruner Pruner::restore(const std::filesystem::path& file, PruneConfig cfg) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw CheckpointError("cannot open " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string bytes = ss.str();
  if (bytes.size() < sizeof kMagic + sizeof(std::uint64_t)) {
    throw CheckpointError("checkpoint truncated");
  }
  std::uint64_t stored = 0;
  std::memcpy(&stored, bytes.data() + bytes.size() - sizeof stored, sizeof stored);
  const std::string body = bytes.substr(0, bytes.size() - sizeof stored);
  if (std::memcmp(body.data(), kMagic, sizeof kMagic) != 0) {
    throw CheckpointError("not a checkpoint file");
  }
  if (fnv1a(body) != stored) throw CheckpointError("checkpoint checksum mismatch");

  Reader r(body);
  char magic[8];
  r.raw(magic, sizeof magic);
  if (r.get<std::uint32_t>() != kVersion) throw CheckpointError("unsupported checkpoint version");
  if (r.get<std::uint8_t>() != 1) {
    throw CheckpointError("checkpoint was not taken at a phase boundary");
  }
  const auto n = r.get<std::uint64_t>();
  if (n >= kNoVertex) throw CheckpointError("vertex count out of range");

  const auto n0 = r.count(r.get<std::uint32_t>(), 4);
  std::vector<Label> tlabels(n0);
  for (auto& l : tlabels) l = r.get<std::uint32_t>();
  const auto m0 = r.count(r.get<std::uint32_t>(), 8);
  std::vector<TemplateEdge> tedges(m0);
  for (auto& [a, b] : tedges) {
    a = r.get<std::uint32_t>();
    b = r.get<std::uint32_t>();
  }
  Template t(tlabels, tedges);

  std::vector<std::pair<Label, std::uint64_t>> freq(r.count(r.get<std::uint32_t>(), 12));
  for (auto& [l, f] : freq) {
    l = r.get<std::uint32_t>();
    f = r.get<std::uint64_t>();
  }
  Position pos;
  pos.initial_done = r.get<std::uint8_t>() != 0;
  pos.next = r.get<std::uint64_t>();
  pos.round = r.get<std::uint64_t>();
  pos.round_changed = r.get<std::uint8_t>() != 0;
  pos.round_hits = r.get<std::uint8_t>() != 0;
  pos.fresh = r.get<std::uint8_t>() != 0;
  pos.finished = r.get<std::uint8_t>() != 0;
  cfg.edge_elimination = r.get<std::uint8_t>() != 0;
  cfg.work_aggregation = r.get<std::uint8_t>() != 0;
  if (r.get<std::uint8_t>() != 0) {
    std::vector<std::size_t> order(r.count(r.get<std::uint64_t>(), 8));
    for (auto& i : order) i = r.get<std::uint64_t>();
    cfg.constraint_order = std::move(order);
  } else {
    cfg.constraint_order.reset();
  }

  std::vector<Label> labels(n, 0);
  std::vector<std::pair<VertexId, VertexSet>> records(r.count(r.get<std::uint64_t>(), 24));
  for (auto& [v, om] : records) {
    v = r.get<std::uint32_t>();
    if (v >= n) throw CheckpointError("vertex id out of range");
    labels[v] = r.get<std::uint32_t>();
    const auto w0 = r.get<std::uint64_t>();
    const auto w1 = r.get<std::uint64_t>();
    om.set_word(0, w0);
    om.set_word(1, w1);
    om.for_each([&](TemplateVertex q) {
      if (q >= n0) throw CheckpointError("candidate outside the template");
    });
  }
  std::vector<std::pair<VertexId, VertexId>> arcs(r.count(r.get<std::uint64_t>(), 8));
  for (auto& [a, b] : arcs) {
    a = r.get<std::uint32_t>();
    b = r.get<std::uint32_t>();
    if (a >= n || b >= n || a == b) throw CheckpointError("arc out of range");
  }
  if (r.offset() != body.size()) throw CheckpointError("trailing bytes in checkpoint");

  auto g = std::make_shared<const LabeledGraph>(LabeledGraph::from_edges(n, arcs, labels));
  VertexStates s = init_states(*g, t);
  std::fill(s.alpha.begin(), s.alpha.end(), 0);
  std::fill(s.omega.begin(), s.omega.end(), VertexSet{});
  std::fill(s.edge_live.begin(), s.edge_live.end(), 0);
  for (const auto& [v, om] : records) {
    s.alpha[v] = 1;
    s.omega[v] = om;
  }
  for (VertexId v = 0; v < n; ++v) {
    if (s.alpha[v] == 0) continue;
    for (std::uint64_t a = g->first_slot(v); a < g->end_slot(v); ++a) {
      if (s.alpha[g->slot_target(a)] != 0) s.edge_live[a] = 1;
    }
  }

  Pruner p(g, std::move(t), std::move(cfg), std::move(s), table_frequency(freq));
  // The rebuilt graph holds only survivors, so spread them afresh.
  if (p.cfg_.engine.workers > 1 && !p.cfg_.engine.deterministic) {
    p.setup(table_frequency(freq),
            std::make_shared<const Partition>(
                Partition::balanced(*g, p.states_.alpha, p.cfg_.engine.workers)));
  }
  p.pos_ = pos;
  if (p.pos_.next > p.plan_.constraints.size()) throw CheckpointError("position out of range");
  return p;
}

}  // namespace prunematch
