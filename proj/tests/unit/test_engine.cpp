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

#include <atomic>
#include <numeric>

#include "fixtures.hpp"
#include "prunematch/engine.hpp"

namespace pm = prunematch;

namespace {

struct Hop {
  std::uint32_t ttl = 0;
};

using HopEngine = pm::Engine<Hop>;

// Every vertex sends a message ttl hops around a ring; counts deliveries.
pm::DeliveryStats ring(std::size_t n, std::size_t workers, std::uint32_t ttl, std::uint64_t seed,
                       std::vector<std::uint64_t>& hits, std::size_t limit = 1 << 16) {
  pm::EngineConfig cfg;
  cfg.workers = workers;
  cfg.seed = seed;
  cfg.queue_limit = limit;
  HopEngine e(std::make_shared<pm::Partition>(pm::Partition::hashed(n, workers)), cfg);
  std::vector<std::atomic<std::uint64_t>> count(n);
  std::vector<pm::VertexId> all(n);
  std::iota(all.begin(), all.end(), 0);
  e.do_traversal(all, [&](HopEngine::Context& ctx, HopEngine::VisitorT& v) {
    count[v.target].fetch_add(1);
    if (v.type == pm::MessageType::init) {
      ctx.push({static_cast<pm::VertexId>((v.target + 1) % n), pm::MessageType::forward, Hop{ttl}});
    } else if (v.payload.ttl > 1) {
      ctx.push({static_cast<pm::VertexId>((v.target + 1) % n), pm::MessageType::forward,
                Hop{v.payload.ttl - 1}});
    }
  });
  const auto stats = e.run_until_quiescence();
  hits.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) hits[i] = count[i].load();
  return stats;
}

TEST(Engine, QuiescesWithExactCounts) {
  for (std::size_t w : {1, 2, 4, 8}) {
    std::vector<std::uint64_t> hits;
    const auto s = ring(100, w, 5, 0, hits);
    EXPECT_EQ(s.pushed_of(pm::MessageType::forward), 500u) << w;
    EXPECT_EQ(s.delivered_of(pm::MessageType::init), 100u) << w;
    EXPECT_EQ(s.total_delivered(), 600u) << w;
    for (auto h : hits) EXPECT_EQ(h, 6u);
  }
}

TEST(Engine, SeedAndQueueLimitDoNotChangeTotals) {
  std::vector<std::uint64_t> a;
  std::vector<std::uint64_t> b;
  ring(64, 4, 7, 0, a);
  ring(64, 4, 7, 12345, b, 2);
  EXPECT_EQ(a, b);
}

TEST(Engine, RejectsBadConfig) {
  auto part = std::make_shared<pm::Partition>(pm::Partition::hashed(4, 2));
  pm::EngineConfig zero;
  zero.workers = 0;
  EXPECT_THROW(HopEngine(part, zero), pm::EngineError);
  pm::EngineConfig mismatch;
  mismatch.workers = 3;
  EXPECT_THROW(HopEngine(part, mismatch), pm::EngineError);
  pm::EngineConfig nolimit;
  nolimit.queue_limit = 0;
  EXPECT_THROW(HopEngine(part, nolimit), pm::EngineError);
}

TEST(Engine, DeterministicForcesOneWorker) {
  pm::EngineConfig cfg;
  cfg.workers = 4;
  cfg.deterministic = true;
  HopEngine e(std::make_shared<pm::Partition>(pm::Partition::hashed(4, 4)), cfg);
  EXPECT_EQ(e.workers(), 1u);
}

TEST(Engine, CallbackErrorsPropagate) {
  for (std::size_t w : {1, 3}) {
    pm::EngineConfig cfg;
    cfg.workers = w;
    HopEngine e(std::make_shared<pm::Partition>(pm::Partition::hashed(10, w)), cfg);
    std::vector<pm::VertexId> all{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    e.do_traversal(all, [](HopEngine::Context&, HopEngine::VisitorT& v) {
      if (v.target == 7) throw std::runtime_error("boom");
    });
    EXPECT_THROW(e.run_until_quiescence(), pm::EngineError);
    EXPECT_FALSE(e.running());
  }
}

TEST(Engine, OutOfRangeTargetFails) {
  HopEngine e(std::make_shared<pm::Partition>(pm::Partition::hashed(2, 1)), {});
  const std::vector<pm::VertexId> one{0};
  e.do_traversal(one, [](HopEngine::Context& ctx, HopEngine::VisitorT&) {
    ctx.push({99, pm::MessageType::forward, Hop{}});
  });
  EXPECT_THROW(e.run_until_quiescence(), pm::EngineError);
}

TEST(Engine, RunWithoutTraversalFails) {
  HopEngine e(std::make_shared<pm::Partition>(pm::Partition::hashed(2, 1)), {});
  EXPECT_THROW(e.run_until_quiescence(), pm::EngineError);
}

TEST(Partition, BalancedCoversEveryVertex) {
  const auto g = fixtures::k4();
  std::vector<std::uint8_t> active{1, 1, 0, 1};
  const auto p = pm::Partition::balanced(g, active, 2);
  EXPECT_EQ(p.workers(), 2u);
  EXPECT_EQ(p.vertex_count(), 4u);
  for (pm::VertexId v = 0; v < 4; ++v) EXPECT_LT(p.owner(v), 2u);
}

}  // namespace
