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


#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <iterator>

#include "json.hpp"

#include "fixtures.hpp"
#include "prunematch/pipeline.hpp"
#include "prunematch/testkit.hpp"

namespace pm = prunematch;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "prunematch_pipeline_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

void spit(const fs::path& p, const std::string& s) {
  std::ofstream(p, std::ios::binary) << s;
}

pm::testkit::Instance cyclic_instance(std::uint64_t seed) {
  pm::testkit::InstanceParams p;
  p.vertices = 30;
  p.edge_probability = 0.2;
  p.labels = 2;
  p.template_vertices = 5;
  p.extra_edge_probability = 0.8;
  return pm::testkit::random_instance(p, seed);
}

TEST(Pipeline, HexagonStepsAndTrail) {
  auto g = fixtures::shared(fixtures::hexagon());
  std::vector<pm::PhaseReport> seen;
  pm::PruneConfig cfg;
  cfg.observer = [&](const pm::PhaseReport& r) { seen.push_back(r); };
  pm::Pruner p(g, fixtures::triangle(), cfg);
  EXPECT_TRUE(p.step());
  EXPECT_EQ(p.trail().back().kind, pm::PhaseKind::lcc);
  EXPECT_EQ(p.trail().back().active_vertices, 6u);
  p.run();
  EXPECT_TRUE(p.done());
  EXPECT_FALSE(p.step());
  EXPECT_TRUE(p.result().empty());
  EXPECT_EQ(seen.size(), p.trail().size());
  EXPECT_EQ(p.trail()[1].kind, pm::PhaseKind::nlcc);
  ASSERT_TRUE(p.trail()[1].constraint.has_value());
}

TEST(Pipeline, JsonLinesAreParseable) {
  auto g = fixtures::shared(fixtures::hexagon());
  pm::Pruner p(g, fixtures::triangle());
  p.run();
  for (const auto& r : p.trail()) {
    const auto line = pm::to_json_line(r, &p.plan());
    EXPECT_EQ(line.find('\n'), std::string::npos);
    const auto j = nlohmann::json::parse(line);
    EXPECT_TRUE(j.contains("active_vertices"));
  }
}

TEST(Pipeline, ConstraintOrderSubset) {
  const auto inst = cyclic_instance(3);
  auto g = fixtures::shared(inst.graph);
  pm::Pruner full(g, inst.templ);
  full.run();
  pm::PruneConfig cfg;
  cfg.constraint_order = std::vector<std::size_t>{};
  pm::Pruner none(g, inst.templ, cfg);
  none.run();
  // Without non-local checks the result can only be larger.
  const auto a = full.result();
  const auto b = none.result();
  EXPECT_LE(a.vertex_count(), b.vertex_count());
  for (auto v : a.vertices) EXPECT_TRUE(std::binary_search(b.vertices.begin(), b.vertices.end(), v));
}

TEST(Pipeline, SolutionFilesWritten) {
  const auto g = fixtures::graph(3, {{0, 1}, {1, 2}, {2, 0}}, {0, 1, 2});
  const auto sol = pm::prune(g, fixtures::triangle());
  const auto dir = scratch("out");
  pm::write_solution(dir, sol, R"({"k":1})");
  EXPECT_EQ(slurp(dir / "vertices.txt"), "0 q0\n1 q1\n2 q2\n");
  EXPECT_EQ(slurp(dir / "edges.txt"), "0 1\n0 2\n1 2\n");
  EXPECT_EQ(nlohmann::json::parse(slurp(dir / "manifest.json"))["k"], 1);
  EXPECT_EQ(sol.candidates(1), pm::VertexSet::single(1));
  EXPECT_TRUE(sol.candidates(7).empty());
}

TEST(Pipeline, CheckpointRoundTripAtEveryStep) {
  const auto inst = cyclic_instance(11);
  auto g = fixtures::shared(inst.graph);
  pm::Pruner ref(g, inst.templ);
  ref.run();
  const auto want = ref.result();

  for (std::size_t stop = 0; stop < ref.trail().size(); ++stop) {
    pm::Pruner p(g, inst.templ);
    for (std::size_t i = 0; i < stop; ++i) p.step();
    const auto file = scratch("ck" + std::to_string(stop) + ".bin");
    p.save_checkpoint(file);
    pm::PruneConfig cfg;
    cfg.engine.workers = 2;
    auto r = pm::Pruner::restore(file, cfg);
    r.run();
    EXPECT_EQ(r.result(), want) << "stopped after " << stop;
  }
}

TEST(Pipeline, CheckpointCorruptionIsDetected) {
  const auto inst = cyclic_instance(12);
  auto g = fixtures::shared(inst.graph);
  pm::Pruner p(g, inst.templ);
  p.step();
  const auto file = scratch("good.bin");
  p.save_checkpoint(file);
  const auto bytes = slurp(file);

  const auto truncated = scratch("trunc.bin");
  spit(truncated, bytes.substr(0, bytes.size() / 2));
  EXPECT_THROW(pm::Pruner::restore(truncated, {}), pm::CheckpointError);

  auto flipped = bytes;
  flipped[bytes.size() / 2] = static_cast<char>(flipped[bytes.size() / 2] ^ 0x40);
  const auto bad = scratch("flip.bin");
  spit(bad, flipped);
  EXPECT_THROW(pm::Pruner::restore(bad, {}), pm::CheckpointError);

  auto magic = bytes;
  magic[0] = 'X';
  const auto wrong = scratch("magic.bin");
  spit(wrong, magic);
  EXPECT_THROW(pm::Pruner::restore(wrong, {}), pm::CheckpointError);

  EXPECT_THROW(pm::Pruner::restore(scratch("missing.bin"), {}), pm::CheckpointError);
}

TEST(Pipeline, DisablingOptimizationsKeepsResults) {
  for (std::uint64_t seed = 20; seed < 30; ++seed) {
    const auto inst = cyclic_instance(seed);
    const auto base = pm::prune(inst.graph, inst.templ);
    pm::PruneConfig plain;
    plain.edge_elimination = false;
    plain.work_aggregation = false;
    EXPECT_EQ(pm::prune(inst.graph, inst.templ, plain), base) << seed;
    pm::PruneConfig shuffled;
    shuffled.engine.workers = 3;
    shuffled.engine.seed = seed;
    shuffled.engine.queue_limit = 4;
    EXPECT_EQ(pm::prune(inst.graph, inst.templ, shuffled), base) << seed;
  }
}

TEST(Pipeline, LabelsAbsentFromGraphGiveEmptyResult) {
  const auto g = fixtures::graph(3, {{0, 1}, {1, 2}}, {0, 0, 0});
  EXPECT_TRUE(pm::prune(g, fixtures::triangle()).empty());
}

}  // namespace
