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

#ifndef PRUNEMATCH_ENGINE_HPP
#define PRUNEMATCH_ENGINE_HPP

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <exception>
#include <functional>
#include <memory>
#include <mutex>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "prunematch/graph.hpp"
#include "prunematch/types.hpp"

namespace prunematch {

enum class MessageType : std::uint8_t { init = 0, alive = 1, forward = 2, ack = 3 };
inline constexpr std::size_t kMessageTypes = 4;

inline const char* to_string(MessageType t) {
  switch (t) {
    case MessageType::init:
      return "init";
    case MessageType::alive:
      return "alive";
    case MessageType::forward:
      return "forward";
    case MessageType::ack:
      return "ack";
  }
  return "?";
}

class EngineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EngineConfig {
  std::size_t workers = 1;
  /// Single worker, reproducible delivery order.
  bool deterministic = false;
  /// Nonzero: shuffle the order in which init visitors are issued.
  std::uint64_t seed = 0;
  /// Visitors a worker queue may hold before producers block (remote) or the
  /// local queue switches to last-in-first-out (own pushes).
  std::size_t queue_limit = std::size_t{1} << 16;
};

struct DeliveryStats {
  std::array<std::uint64_t, kMessageTypes> pushed{};
  std::array<std::uint64_t, kMessageTypes> delivered{};
  std::uint64_t max_queue_depth = 0;
  /// Remote pushes that exceeded the limit because no worker made progress.
  std::uint64_t forced_pushes = 0;

  [[nodiscard]] std::uint64_t pushed_of(MessageType t) const {
    return pushed[static_cast<std::size_t>(t)];
  }
  [[nodiscard]] std::uint64_t delivered_of(MessageType t) const {
    return delivered[static_cast<std::size_t>(t)];
  }
  [[nodiscard]] std::uint64_t total_pushed() const {
    std::uint64_t s = 0;
    for (auto v : pushed) s += v;
    return s;
  }
  [[nodiscard]] std::uint64_t total_delivered() const {
    std::uint64_t s = 0;
    for (auto v : delivered) s += v;
    return s;
  }
  DeliveryStats& operator+=(const DeliveryStats& o) {
    for (std::size_t i = 0; i < kMessageTypes; ++i) {
      pushed[i] += o.pushed[i];
      delivered[i] += o.delivered[i];
    }
    max_queue_depth = std::max(max_queue_depth, o.max_queue_depth);
    forced_pushes += o.forced_pushes;
    return *this;
  }
};

/// Vertex-to-worker assignment.
class Partition {
 public:
  Partition() = default;

  /// Stable hash of the vertex id modulo the worker count.
  static Partition hashed(std::size_t n, std::size_t workers);
  /// Greedy bin packing of active vertices by weight 1 + degree; inactive
  /// vertices fall back to the hash.
  static Partition balanced(const LabeledGraph& g, std::span<const std::uint8_t> active,
                            std::size_t workers);

  [[nodiscard]] std::size_t workers() const { return workers_; }
  [[nodiscard]] std::size_t vertex_count() const { return owner_.size(); }
  [[nodiscard]] std::uint32_t owner(VertexId v) const { return owner_[v]; }

 private:
  std::size_t workers_ = 1;
  std::vector<std::uint32_t> owner_;
};

template <typename Payload>
struct Visitor {
  VertexId target = 0;
  MessageType type = MessageType::init;
  Payload payload{};
};

/// In-process vertex-centric asynchronous runtime. Each worker owns a slice of
/// the vertices and executes their callbacks serially; a traversal ends when
/// no visitor is queued, in flight or executing.
template <typename Payload>
class Engine {
 public:
  using VisitorT = Visitor<Payload>;

  class Context {
   public:
    void push(VisitorT v) { engine_->push_from(worker_, std::move(v)); }
    [[nodiscard]] std::size_t worker() const { return worker_; }

   private:
    friend class Engine;
    Context(Engine* e, std::size_t w) : engine_(e), worker_(w) {}
    Engine* engine_;
    std::size_t worker_;
  };

  using Callback = std::function<void(Context&, VisitorT&)>;

  Engine(std::shared_ptr<const Partition> partition, EngineConfig cfg)
      : partition_(std::move(partition)), cfg_(cfg) {
    if (cfg_.workers == 0) throw EngineError("worker count must be at least 1");
    if (cfg_.queue_limit == 0) throw EngineError("queue limit must be at least 1");
    if (cfg_.deterministic) cfg_.workers = 1;
    if (cfg_.workers > 1 && partition_->workers() != cfg_.workers) {
      throw EngineError("partition worker count does not match engine config");
    }
    busy_.assign(partition_->vertex_count(), 0);
  }

  [[nodiscard]] std::size_t workers() const { return cfg_.workers; }
  [[nodiscard]] const EngineConfig& config() const { return cfg_; }
  [[nodiscard]] bool running() const { return armed_; }

  /// Queues one init visitor per listed vertex. The traversal executes on
  /// run_until_quiescence().
  void do_traversal(std::span<const VertexId> vertices, Callback cb) {
    if (armed_) throw EngineError("engine already running");
    init_.assign(vertices.begin(), vertices.end());
    if (cfg_.seed != 0) {
      std::mt19937_64 rng(cfg_.seed);
      std::shuffle(init_.begin(), init_.end(), rng);
    }
    cb_ = std::move(cb);
    armed_ = true;
  }

  /// Blocks until quiescence; rethrows callback failures as EngineError.
  DeliveryStats run_until_quiescence() {
    if (!armed_) throw EngineError("no traversal started");
    DeliveryStats s;
    try {
      s = cfg_.workers == 1 ? run_serial() : run_parallel();
    } catch (...) {
      reset();
      throw;
    }
    reset();
    return s;
  }

 private:
  struct Worker {
    std::mutex m;
    std::condition_variable cv;
    std::condition_variable space;
    std::deque<VisitorT> inbox;
    std::atomic<std::size_t> inbox_size{0};
    std::deque<VisitorT> local;
    DeliveryStats stats;
    std::uint64_t inbox_peak = 0;  // guarded by m
  };

  void reset() {
    armed_ = false;
    cb_ = nullptr;
    init_.clear();
    workers_.clear();
    serial_.clear();
  }

  void deliver(std::size_t w, VisitorT& v, DeliveryStats& stats) {
    if (v.target >= busy_.size()) {
      throw EngineError("visitor targets vertex " + std::to_string(v.target) + " out of range");
    }
    if (busy_[v.target] != 0) {
      throw EngineError("reentrant callback on vertex " + std::to_string(v.target));
    }
    busy_[v.target] = 1;
    Context ctx(this, w);
    try {
      cb_(ctx, v);
    } catch (const std::exception& e) {
      busy_[v.target] = 0;
      throw EngineError("callback failed on vertex " + std::to_string(v.target) + " (" +
                        to_string(v.type) + "): " + e.what());
    }
    busy_[v.target] = 0;
    ++stats.delivered[static_cast<std::size_t>(v.type)];
  }

  static VisitorT take(std::deque<VisitorT>& q, std::size_t limit) {
    VisitorT v;
    if (q.size() > limit) {
      v = std::move(q.back());
      q.pop_back();
    } else {
      v = std::move(q.front());
      q.pop_front();
    }
    return v;
  }

  DeliveryStats run_serial() {
    DeliveryStats stats;
    serial_stats_ = &stats;
    for (VertexId v : init_) serial_.push_back(VisitorT{v, MessageType::init, Payload{}});
    stats.pushed[0] = init_.size();
    stats.max_queue_depth = serial_.size();
    while (!serial_.empty()) {
      VisitorT v = take(serial_, cfg_.queue_limit);
      deliver(0, v, stats);
    }
    serial_stats_ = nullptr;
    return stats;
  }

  DeliveryStats run_parallel() {
    const std::size_t W = cfg_.workers;
    workers_.clear();
    for (std::size_t i = 0; i < W; ++i) workers_.push_back(std::make_unique<Worker>());
    pending_.store(static_cast<std::int64_t>(init_.size()));
    abort_.store(false);
    progress_.store(0);
    error_ = nullptr;
    for (VertexId v : init_) {
      auto& wk = *workers_[partition_->owner(v)];
      wk.local.push_back(VisitorT{v, MessageType::init, Payload{}});
      ++wk.stats.pushed[0];
    }
    std::vector<std::thread> threads;
    threads.reserve(W);
    for (std::size_t i = 0; i < W; ++i) threads.emplace_back([this, i] { worker_loop(i); });
    for (auto& t : threads) t.join();
    if (error_) std::rethrow_exception(error_);
    DeliveryStats total;
    for (auto& w : workers_) {
      w->stats.max_queue_depth = std::max(w->stats.max_queue_depth, w->inbox_peak);
      total += w->stats;
    }
    return total;
  }

  void fail(std::exception_ptr e) {
    {
      std::lock_guard lk(error_mutex_);
      if (!error_) error_ = e;
    }
    abort_.store(true);
    for (auto& w : workers_) {
      std::lock_guard lk(w->m);
      w->cv.notify_all();
      w->space.notify_all();
    }
  }

  void drain_inbox(Worker& wk) {
    if (wk.inbox_size.load(std::memory_order_acquire) == 0) return;
    std::lock_guard lk(wk.m);
    for (auto& v : wk.inbox) wk.local.push_back(std::move(v));
    wk.inbox.clear();
    wk.inbox_size.store(0, std::memory_order_release);
    wk.space.notify_all();
  }

  void worker_loop(std::size_t w) {
    auto& wk = *workers_[w];
    try {
      while (!abort_.load(std::memory_order_relaxed)) {
        drain_inbox(wk);
        wk.stats.max_queue_depth =
            std::max<std::uint64_t>(wk.stats.max_queue_depth, wk.local.size());
        if (wk.local.empty()) {
          if (pending_.load(std::memory_order_acquire) == 0) break;
          std::unique_lock lk(wk.m);
          wk.cv.wait_for(lk, std::chrono::milliseconds(1), [&] {
            return !wk.inbox.empty() || pending_.load() == 0 || abort_.load();
          });
          continue;
        }
        VisitorT v = take(wk.local, cfg_.queue_limit);
        deliver(w, v, wk.stats);
        progress_.fetch_add(1, std::memory_order_relaxed);
        if (pending_.fetch_sub(1, std::memory_order_acq_rel) == 1) {
          for (auto& other : workers_) {
            std::lock_guard lk(other->m);
            other->cv.notify_all();
          }
        }
      }
    } catch (...) {
      fail(std::current_exception());
    }
  }

  void push_from(std::size_t w, VisitorT v) {
    if (cfg_.workers == 1) {
      ++serial_stats_->pushed[static_cast<std::size_t>(v.type)];
      serial_.push_back(std::move(v));
      serial_stats_->max_queue_depth =
          std::max<std::uint64_t>(serial_stats_->max_queue_depth, serial_.size());
      return;
    }
    auto& self = *workers_[w];
    ++self.stats.pushed[static_cast<std::size_t>(v.type)];
    pending_.fetch_add(1, std::memory_order_acq_rel);
    const std::uint32_t owner = partition_->owner(v.target);
    if (owner == w) {
      self.local.push_back(std::move(v));
      return;
    }
    auto& dst = *workers_[owner];
    std::unique_lock lk(dst.m);
    while (dst.inbox.size() >= cfg_.queue_limit && !abort_.load()) {
      const auto before = progress_.load();
      dst.space.wait_for(lk, std::chrono::milliseconds(2));
      if (dst.inbox.size() >= cfg_.queue_limit && progress_.load() == before) {
        ++self.stats.forced_pushes;
        break;
      }
    }
    dst.inbox.push_back(std::move(v));
    dst.inbox_size.store(dst.inbox.size(), std::memory_order_release);
    dst.inbox_peak = std::max<std::uint64_t>(dst.inbox_peak, dst.inbox.size());
    dst.cv.notify_one();
  }

  std::shared_ptr<const Partition> partition_;
  EngineConfig cfg_;
  std::vector<std::uint8_t> busy_;
  std::vector<VertexId> init_;
  Callback cb_;
  bool armed_ = false;

  std::deque<VisitorT> serial_;
  DeliveryStats* serial_stats_ = nullptr;

  std::vector<std::unique_ptr<Worker>> workers_;
  std::atomic<std::int64_t> pending_{0};
  std::atomic<bool> abort_{false};
  std::atomic<std::uint64_t> progress_{0};
  std::mutex error_mutex_;
  std::exception_ptr error_;
};

}  // namespace prunematch

#endif  // PRUNEMATCH_ENGINE_HPP
