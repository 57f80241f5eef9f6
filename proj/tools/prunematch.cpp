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

// Command-line front end: prune, count, enumerate, explore, serve and a few
// generators and self-checks. Reports are JSON lines on stdout.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "prunematch/constraints.hpp"
#include "prunematch/enumeration.hpp"
#include "prunematch/graph.hpp"
#include "prunematch/pipeline.hpp"
#include "prunematch/scenarios.hpp"
#include "prunematch/service.hpp"
#include "prunematch/template.hpp"
#include "prunematch/testkit.hpp"

namespace pm = prunematch;
using nlohmann::json;

namespace {

struct Inputs {
  std::string graph;
  std::string labels;
  std::string templ;
  std::string label_map;
};

struct Tuning {
  std::size_t workers = 1;
  std::uint64_t seed = 0;
  std::size_t queue_limit = std::size_t{1} << 16;
  bool deterministic = false;
  bool no_edge_elimination = false;
  bool no_work_aggregation = false;
  std::string constraint_order;
};

void add_inputs(CLI::App* app, Inputs& in, bool need_template = true) {
  app->add_option("-g,--graph", in.graph, "Edge list: one 'u v' pair per line")
      ->required()
      ->check(CLI::ExistingFile);
  app->add_option("-l,--labels", in.labels, "Vertex labels: 'v label' per line")
      ->check(CLI::ExistingFile);
  auto* t = app->add_option("-t,--template", in.templ, "Template file ('v id label', 'e a b')")
                ->check(CLI::ExistingFile);
  if (need_template) t->required();
  app->add_option("--label-map", in.label_map, "Names usable in templates: 'name id' per line")
      ->check(CLI::ExistingFile);
}

void add_tuning(CLI::App* app, Tuning& tu) {
  app->add_option("-w,--workers", tu.workers, "Worker threads")
      ->envname("PRUNEMATCH_WORKERS")
      ->check(CLI::PositiveNumber);
  app->add_option("--seed", tu.seed, "Shuffle seed for visitor issue order (0 = off)")
      ->envname("PRUNEMATCH_SEED");
  app->add_option("--queue-limit", tu.queue_limit, "Per-worker queue bound")
      ->envname("PRUNEMATCH_QUEUE_LIMIT")
      ->check(CLI::PositiveNumber);
  app->add_flag("--deterministic", tu.deterministic, "Single worker, reproducible order")
      ->envname("PRUNEMATCH_DETERMINISTIC");
  app->add_flag("--no-edge-elimination", tu.no_edge_elimination,
                "Keep messaging over edges known to be dead");
  app->add_flag("--no-work-aggregation", tu.no_work_aggregation,
                "Forward every walk even when an equivalent one was sent");
  app->add_option("--constraint-order", tu.constraint_order,
                  "Plan indices to run, in order: a file or a comma list");
}

pm::LabelNames load_label_map(const std::string& path) {
  pm::LabelNames names;
  if (path.empty()) return names;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string name;
    pm::Label id = 0;
    if (!(ls >> name) || name.front() == '#') continue;
    if (!(ls >> id)) throw std::runtime_error("bad label map line: " + line);
    names[name] = id;
  }
  return names;
}

std::shared_ptr<const pm::LabeledGraph> load_graph(const Inputs& in) {
  auto el = pm::load_edge_list(in.graph);
  auto g = std::move(el.graph);
  if (!in.labels.empty()) g = pm::load_labels(in.labels, g);
  return std::make_shared<const pm::LabeledGraph>(std::move(g));
}

// A file of indices, or the indices inline ("2,0,1").
std::vector<std::size_t> parse_order(const std::string& arg) {
  std::string text = arg;
  if (std::filesystem::is_regular_file(arg)) {
    std::ifstream in(arg);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  for (auto& c : text) {
    if (c == ',') c = ' ';
  }
  std::vector<std::size_t> out;
  std::istringstream ss(text);
  std::size_t i = 0;
  while (ss >> i) out.push_back(i);
  if (!ss.eof()) throw std::runtime_error("bad --constraint-order: " + arg);
  return out;
}

pm::PruneConfig make_config(const Tuning& tu) {
  pm::PruneConfig cfg;
  cfg.engine.workers = tu.workers;
  cfg.engine.seed = tu.seed;
  cfg.engine.queue_limit = tu.queue_limit;
  cfg.engine.deterministic = tu.deterministic;
  cfg.edge_elimination = !tu.no_edge_elimination;
  cfg.work_aggregation = !tu.no_work_aggregation;
  if (!tu.constraint_order.empty()) cfg.constraint_order = parse_order(tu.constraint_order);
  return cfg;
}

json match_count_json(const pm::MatchCount& mc) {
  return {{"mappings", mc.mappings},
          {"automorphisms", mc.automorphisms},
          {"embeddings", mc.embeddings}};
}

void print_match(std::span<const pm::VertexId> phi) {
  json j = json::array();
  for (auto v : phi) j.push_back(v);
  std::cout << json{{"match", j}}.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subgraph matching by iterative pruning"};
  app.require_subcommand(1);

  Inputs in;
  Tuning tu;

  // prune
  std::string out_dir;
  std::string checkpoint_dir;
  std::string restore;
  std::string count_mode = "embeddings";
  bool dump_plan = false;
  auto* prune = app.add_subcommand("prune", "Prune the background graph to the solution subgraph");
  add_inputs(prune, in, false);
  add_tuning(prune, tu);
  prune->add_option("-o,--out", out_dir, "Directory for vertices.txt, edges.txt, manifest.json");
  prune->add_option("--checkpoint-dir", checkpoint_dir, "Write a checkpoint after every phase");
  prune->add_option("--restore", restore, "Resume from a checkpoint file")
      ->check(CLI::ExistingFile);
  prune->add_flag("--dump-plan", dump_plan, "Print the constraint plan before running");

  // count / enumerate
  std::size_t limit = 0;
  auto* count = app.add_subcommand("count", "Prune, then count matches");
  add_inputs(count, in);
  add_tuning(count, tu);
  count->add_option("--count-mode", count_mode, "embeddings (distinct vertex sets) or mappings")
      ->check(CLI::IsMember({"embeddings", "mappings"}));
  auto* enumerate = app.add_subcommand("enumerate", "Prune, then list matches");
  add_inputs(enumerate, in);
  add_tuning(enumerate, tu);
  enumerate->add_option("--limit", limit, "Stop after this many matches (0 = all)");
  enumerate->add_option("-o,--out", out_dir, "Write matches.txt here instead of stdout");

  // explore
  std::size_t max_k = 2;
  auto* explore = app.add_subcommand("explore", "Relax the template edge by edge until it matches");
  add_inputs(explore, in);
  add_tuning(explore, tu);
  explore->add_option("--max-k", max_k, "Most edges to drop");

  // serve
  std::string host = "127.0.0.1";
  int port = 8080;
  auto* serve = app.add_subcommand("serve", "Serve sessions and exploration over HTTP");
  add_inputs(serve, in, false);
  add_tuning(serve, tu);
  serve->add_option("--host", host, "Listen address");
  serve->add_option("--port", port, "Listen port (0 = any)");

  // gen-rmat
  pm::testkit::RmatParams rp;
  bool deg_labels = false;
  std::string gen_prefix;
  auto* gen = app.add_subcommand("gen-rmat", "Generate an R-MAT graph");
  gen->add_option("--scale", rp.scale, "log2 of the vertex count");
  gen->add_option("--edge-factor", rp.edge_factor, "Edges per vertex");
  gen->add_option("--seed", rp.seed, "Generator seed");
  gen->add_flag("--degree-labels", deg_labels, "Label vertices by degree bit width");
  gen->add_option("-o,--out", gen_prefix, "Output prefix (<prefix>.edges, <prefix>.labels)")
      ->required();

  // oracle-check
  auto* check = app.add_subcommand("oracle-check", "Compare pruning with brute-force search");
  add_inputs(check, in);
  add_tuning(check, tu);

  // dump-plan
  auto* plan = app.add_subcommand("dump-plan", "Print the constraint plan for a template");
  add_inputs(plan, in);

  app.failure_message(CLI::FailureMessage::help);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) {
      auto g = pm::testkit::rmat_generate(rp);
      if (deg_labels) g = g.with_labels(pm::testkit::degree_labels(g));
      pm::write_edge_list(gen_prefix + ".edges", g);
      pm::write_labels(gen_prefix + ".labels", g);
      std::cout << json{{"vertices", g.vertex_count()}, {"edges", g.edge_count()}}.dump() << '\n';
      return 0;
    }

    const auto names = load_label_map(in.label_map);
    auto cfg = make_config(tu);
    auto read_template = [&] { return pm::parse_template(in.templ, &names); };

    if (serve->parsed()) {
      pm::QueryService svc(load_graph(in), cfg, names);
      const int bound = svc.bind(host, port);
      std::cout << json{{"listening", host}, {"port", bound}}.dump() << std::endl;
      svc.serve();
      return 0;
    }

    if (plan->parsed()) {
      const auto g = load_graph(in);
      const auto t = read_template();
      const auto k = pm::generate_constraints(t, pm::analyze(t), pm::compute_stats(*g));
      std::cout << pm::plan_to_string(k, &names);
      return 0;
    }

    if (explore->parsed()) {
      pm::ExploreOptions opt;
      opt.max_k = max_k;
      opt.prune = cfg;
      const auto r = pm::exploratory_search(load_graph(in), read_template(), opt);
      for (const auto& v : r.variants) {
        json removed = json::array();
        for (const auto& [a, b] : v.removed) removed.push_back({a, b});
        std::cout << json{{"removed", removed}, {"vertices", v.vertices}, {"edges", v.edges}}.dump()
                  << '\n';
      }
      json summary{{"found", r.k.has_value()},
                   {"variants_tried", r.variants_tried},
                   {"vertices", r.merged.vertex_count()},
                   {"edges", r.merged.edge_count()}};
      summary["k"] = r.k ? json(*r.k) : json(nullptr);
      std::cout << summary.dump() << '\n';
      return r.k ? 0 : 3;
    }

    // The remaining commands all prune first.
    std::optional<pm::Pruner> pruner;
    if (prune->parsed() && !restore.empty()) {
      pruner.emplace(pm::Pruner::restore(restore, cfg));
    } else {
      if (in.templ.empty()) throw std::runtime_error("--template is required");
      pruner.emplace(load_graph(in), read_template(), cfg);
    }
    auto& p = *pruner;
    if (dump_plan) std::cout << pm::plan_to_string(p.plan(), &names);
    const auto* planp = &p.plan();
    while (p.step()) {
      std::cout << pm::to_json_line(p.trail().back(), planp) << '\n';
      if (!checkpoint_dir.empty()) {
        std::filesystem::create_directories(checkpoint_dir);
        p.save_checkpoint(std::filesystem::path(checkpoint_dir) / "checkpoint.bin");
      }
    }
    const auto sol = p.result();
    json summary{{"vertices", sol.vertex_count()},
                 {"edges", sol.edge_count()},
                 {"rounds", p.rounds()},
                 {"template_vertices", p.templ().vertex_count()},
                 {"template_edges", p.templ().edge_count()}};

    if (check->parsed()) {
      const auto oracle = pm::testkit::oracle_enumerate(p.graph(), p.templ(), pm::testkit::OracleOptions{.keep_matches = false, .allow_large = false, .on_match = {}});
      const bool same = oracle.as_solution() == sol;
      summary["oracle_mappings"] = oracle.mappings;
      summary["equal"] = same;
      std::cout << summary.dump() << '\n';
      return same ? 0 : 1;
    }
    if (enumerate->parsed()) {
      std::ofstream file;
      if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        file.open(std::filesystem::path(out_dir) / "matches.txt");
        if (!file) throw std::runtime_error("cannot write matches.txt");
      }
      const auto n = pm::enumerate(
          sol, p.templ(),
          [&](std::span<const pm::VertexId> phi) {
            if (file.is_open()) {
              for (std::size_t i = 0; i < phi.size(); ++i) file << (i ? " " : "") << phi[i];
              file << '\n';
            } else {
              print_match(phi);
            }
            return true;
          },
          limit == 0 ? std::nullopt : std::optional<std::uint64_t>(limit));
      summary["mappings_listed"] = n;
      std::cout << summary.dump() << '\n';
      std::cerr << n << " mappings\n";
      return 0;
    }
    if (count->parsed()) {
      const auto mc = pm::count_matches(sol, p.templ(), tu.workers);
      summary["count"] = match_count_json(mc);
      summary["mode"] = count_mode;
      summary["value"] = count_mode == "mappings" ? mc.mappings : mc.embeddings;
      std::cout << summary.dump() << '\n';
      std::cerr << (count_mode == "mappings" ? mc.mappings : mc.embeddings) << ' ' << count_mode
                << '\n';
      return 0;
    }
    if (!out_dir.empty()) {
      json manifest = summary;
      manifest["plan"] = json::array();
      for (const auto& c : p.plan().constraints) manifest["plan"].push_back(pm::walk_to_string(c));
      manifest["edge_elimination"] = p.config().edge_elimination;
      manifest["work_aggregation"] = p.config().work_aggregation;
      manifest["workers"] = tu.workers;
      pm::write_solution(out_dir, sol, manifest.dump(2));
    }
    std::cout << summary.dump() << '\n';
    std::cerr << sol.vertex_count() << " vertices, " << sol.edge_count() << " edges survive\n";
    return 0;
  } catch (const pm::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
