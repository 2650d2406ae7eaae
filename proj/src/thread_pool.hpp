#pragma once

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <thread>
#include <vector>

namespace lsap::detail {

// Persistent worker pool for chunked index ranges. Callers pass fn(lo, hi)
// closures that write disjoint slots only, so chunk scheduling can never
// change results. The calling thread participates; a pool built with
// workers == 1 runs everything inline. fn must not throw.
class ThreadPool {
 public:
  explicit ThreadPool(int workers) {
    const int extra = std::max(workers, 1) - 1;
    threads_.reserve(extra);
    for (int t = 0; t < extra; ++t) {
      threads_.emplace_back([this] { worker_loop(); });
    }
  }

  ~ThreadPool() {
    {
      std::lock_guard<std::mutex> lock(m_);
      stop_ = true;
      ++epoch_;
    }
    cv_work_.notify_all();
    for (auto& t : threads_) t.join();
  }

  ThreadPool(const ThreadPool&) = delete;
  ThreadPool& operator=(const ThreadPool&) = delete;

  int workers() const { return static_cast<int>(threads_.size()) + 1; }

  void for_each_chunk(std::int64_t begin, std::int64_t end, std::int64_t grain,
                      const std::function<void(std::int64_t, std::int64_t)>& fn) {
    if (end <= begin) return;
    grain = std::max<std::int64_t>(grain, 1);
    if (threads_.empty() || end - begin <= grain) {
      for (std::int64_t lo = begin; lo < end; lo += grain)
        fn(lo, std::min(lo + grain, end));
      return;
    }

    auto batch = std::make_shared<Batch>();
    batch->fn = &fn;
    batch->end = end;
    batch->grain = grain;
    batch->next.store(begin, std::memory_order_relaxed);
    batch->chunks_total = (end - begin + grain - 1) / grain;
    {
      std::lock_guard<std::mutex> lock(m_);
      current_ = batch;
      ++epoch_;
    }
    cv_work_.notify_all();

    run_chunks(*batch);

    std::unique_lock<std::mutex> lock(m_);
    cv_done_.wait(lock, [&] {
      return batch->chunks_done.load(std::memory_order_acquire) == batch->chunks_total;
    });
    current_.reset();
  }

 private:
  struct Batch {
    const std::function<void(std::int64_t, std::int64_t)>* fn = nullptr;
    std::int64_t end = 0;
    std::int64_t grain = 1;
    std::int64_t chunks_total = 0;
    std::atomic<std::int64_t> next{0};
    std::atomic<std::int64_t> chunks_done{0};
  };

  void run_chunks(Batch& b) {
    while (true) {
      const std::int64_t lo = b.next.fetch_add(b.grain, std::memory_order_relaxed);
      if (lo >= b.end) break;
      (*b.fn)(lo, std::min(lo + b.grain, b.end));
      if (b.chunks_done.fetch_add(1, std::memory_order_acq_rel) + 1 == b.chunks_total) {
        std::lock_guard<std::mutex> lock(m_);
        cv_done_.notify_all();
      }
    }
  }

  void worker_loop() {
    std::uint64_t seen = 0;
    while (true) {
      std::shared_ptr<Batch> batch;
      {
        std::unique_lock<std::mutex> lock(m_);
        cv_work_.wait(lock, [&] { return stop_ || epoch_ != seen; });
        if (stop_) return;
        seen = epoch_;
        batch = current_;
      }
      // A stale batch pointer is harmless: its cursor is exhausted, so
      // run_chunks returns without touching anything.
      if (batch) run_chunks(*batch);
    }
  }

  std::vector<std::thread> threads_;
  std::mutex m_;
  std::condition_variable cv_work_, cv_done_;
  std::shared_ptr<Batch> current_;
  std::uint64_t epoch_ = 0;
  bool stop_ = false;
};

}  // namespace lsap::detail
