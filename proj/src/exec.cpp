#include "parsp/exec.hpp"

#include <atomic>
#include <condition_variable>
#include <mutex>
#include <thread>

namespace parsp {

thread_local Exec::Frame* Exec::active_frame_ = nullptr;

namespace detail {

// Round-synchronous pool: the main thread publishes a batch of index-addressed
// tasks, workers grab indices from a shared counter, and everyone meets at a
// barrier. Task effects are confined to per-index slots, so scheduling order
// never shows in results or counters.
class TaskPool {
 public:
  explicit TaskPool(unsigned threads) {
    if (threads == 0) threads = std::thread::hardware_concurrency();
    if (threads == 0) threads = 2;
    const unsigned helpers = threads > 1 ? threads - 1 : 1;
    workers_.reserve(helpers);
    for (unsigned i = 0; i < helpers; ++i) {
      workers_.emplace_back([this] { worker_loop(); });
    }
  }

  ~TaskPool() {
    {
      std::lock_guard<std::mutex> lock(mu_);
      stop_ = true;
    }
    cv_.notify_all();
    for (auto& w : workers_) w.join();
  }

  void run(std::size_t count, const std::function<void(std::size_t)>& task) {
    {
      std::lock_guard<std::mutex> lock(mu_);
      task_ = &task;
      count_ = count;
      next_.store(0, std::memory_order_relaxed);
      pending_ = count;
      ++generation_;
    }
    cv_.notify_all();
    drain();
    std::unique_lock<std::mutex> lock(mu_);
    done_cv_.wait(lock, [this] { return pending_ == 0; });
    task_ = nullptr;
  }

 private:
  void drain() {
    for (;;) {
      const std::size_t i = next_.fetch_add(1, std::memory_order_relaxed);
      if (i >= count_) return;
      (*task_)(i);
      finish_one();
    }
  }

  void finish_one() {
    std::lock_guard<std::mutex> lock(mu_);
    if (--pending_ == 0) done_cv_.notify_all();
  }

  void worker_loop() {
    std::uint64_t seen = 0;
    for (;;) {
      {
        std::unique_lock<std::mutex> lock(mu_);
        cv_.wait(lock, [&] { return stop_ || generation_ != seen; });
        if (stop_) return;
        seen = generation_;
      }
      for (;;) {
        const std::size_t i = next_.fetch_add(1, std::memory_order_relaxed);
        if (i >= count_) break;
        (*task_)(i);
        finish_one();
      }
    }
  }

  std::vector<std::thread> workers_;
  std::mutex mu_;
  std::condition_variable cv_;
  std::condition_variable done_cv_;
  const std::function<void(std::size_t)>* task_ = nullptr;
  std::size_t count_ = 0;
  std::size_t pending_ = 0;
  std::atomic<std::size_t> next_{0};
  std::uint64_t generation_ = 0;
  bool stop_ = false;
};

}  // namespace detail

Exec::Exec(Backend backend, unsigned threads) : backend_(backend) {
  if (backend_ == Backend::kPar) {
    pool_ = std::make_unique<detail::TaskPool>(threads);
  }
}

Exec::~Exec() = default;

void Exec::pool_run(std::size_t count, const std::function<void(std::size_t)>& task) {
  pool_->run(count, task);
}

}  // namespace parsp
