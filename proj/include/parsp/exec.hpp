#pragma once

#include <cstdint>
#include <exception>
#include <functional>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "parsp/errors.hpp"

namespace parsp {

// Smallest e with 2^e >= k (0 for k <= 1).
inline std::uint64_t ceil_log2(std::uint64_t k) {
  std::uint64_t e = 0;
  std::uint64_t v = 1;
  while (v < k) {
    v <<= 1;
    ++e;
  }
  return e;
}

// work: one unit per task invocation plus explicit charges (weight operations,
// ordered-map node touches). depth: number of sequential rounds, where a round
// costs 1 and a reduction or batch edit adds a ceil(log2 fan-in) surcharge.
// Counters are computed analytically from batch sizes, never from scheduling,
// so they are identical across reruns and across backends.
struct Counters {
  std::uint64_t work = 0;
  std::uint64_t depth = 0;
  bool operator==(const Counters&) const = default;
};

enum class Backend { kSeq, kPar };

// Installed by parametric search: rounds are re-run until a pass performs no
// comparison that is still unresolved at the hidden parameter.
class RoundHook {
 public:
  virtual ~RoundHook() = default;
  virtual void round_reset() = 0;
  // Returns true when the last pass is conclusive; false requests a rerun.
  virtual bool round_commit() = 0;
};

namespace detail {
class TaskPool;
}

class Exec {
 public:
  explicit Exec(Backend backend = Backend::kSeq, unsigned threads = 0);
  ~Exec();
  Exec(const Exec&) = delete;
  Exec& operator=(const Exec&) = delete;

  Backend backend() const { return backend_; }
  Counters counters() const { return Counters{root_.work, root_.depth}; }
  void reset_counters() { root_ = Frame{}; }

  void charge(std::uint64_t work) { frame().work += work; }
  void charge_depth(std::uint64_t depth) { frame().depth += depth; }

  // Batched ordered-map edit of k keys against a dictionary holding `size`
  // keys: work k*(1 + ceil_log2(size+1)), depth 1 + ceil_log2(k+1). This keeps
  // the charge within 3*k*ceil_log2(size) for size >= 2 (asserted in tests).
  void charge_batch_op(std::uint64_t k, std::uint64_t size) {
    if (k == 0) return;
    frame().work += k * (1 + ceil_log2(size + 1));
    frame().depth += 1 + ceil_log2(k + 1);
  }

  void set_round_hook(RoundHook* hook) { hook_ = hook; }
  RoundHook* round_hook() const { return hook_; }

  // One synchronous round: f(i) runs for i in [0, count). Tasks may read
  // shared state but must write only to their own output slot; they may charge
  // counters. Task exceptions are re-thrown (lowest index first) after the
  // round completes. With a hook installed the round is re-run until the hook
  // accepts the pass, so tasks must be pure with respect to shared state.
  template <class F>
  void par_for(std::size_t count, F&& f) {
    if (count == 0) return;
    for (;;) {
      if (hook_) hook_->round_reset();
      run_round(count, f);
      if (!hook_ || hook_->round_commit()) break;
    }
  }

  template <class T, class F>
  std::vector<T> par_map(std::size_t count, F&& f) {
    std::vector<T> out(count);
    par_for(count, [&](std::size_t i) { out[i] = f(i); });
    return out;
  }

  // Balanced-tree reduction with an associative combiner; work k, depth
  // ceil_log2(k). Grouping is fixed, so results do not depend on the backend.
  template <class T, class Op>
  T par_reduce(std::span<const T> items, Op op) {
    if (items.empty()) throw EmptyReduce("par_reduce: empty input without identity");
    return reduce_rounds(items, op);
  }

  template <class T, class Op>
  T par_reduce(std::span<const T> items, Op op, T identity) {
    if (items.empty()) return identity;
    return reduce_rounds(items, op);
  }

 private:
  struct Frame {
    std::uint64_t work = 0;
    std::uint64_t depth = 0;
  };

  // The active frame is thread-local so that pool workers charge their own
  // task frame; outside any round it is the root frame.
  static thread_local Frame* active_frame_;

  Frame& frame() { return active_frame_ ? *active_frame_ : root_; }

  struct FrameScope {
    Frame* saved;
    explicit FrameScope(Frame* next) : saved(active_frame_) { active_frame_ = next; }
    ~FrameScope() { active_frame_ = saved; }
  };

  template <class F>
  void run_round(std::size_t count, F& f) {
    Frame* parent = &frame();
    parent->work += count;
    const std::uint64_t base_depth = parent->depth + 1;
    std::uint64_t max_depth = base_depth;
    std::uint64_t extra_work = 0;
    std::exception_ptr first_error;
    if (backend_ == Backend::kSeq || active_frame_ != nullptr || count == 1) {
      // Nested rounds and the sequential interpreter share this path; the
      // counter bookkeeping matches the pool's exactly.
      for (std::size_t i = 0; i < count; ++i) {
        Frame task{0, base_depth};
        {
          FrameScope scope(&task);
          try {
            f(i);
          } catch (...) {
            if (!first_error) first_error = std::current_exception();
          }
        }
        extra_work += task.work;
        if (task.depth > max_depth) max_depth = task.depth;
      }
    } else {
      std::vector<Frame> frames(count, Frame{0, base_depth});
      std::vector<std::exception_ptr> errors(count);
      pool_run(count, [&](std::size_t i) {
        FrameScope scope(&frames[i]);
        try {
          f(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      });
      for (std::size_t i = 0; i < count; ++i) {
        extra_work += frames[i].work;
        if (frames[i].depth > max_depth) max_depth = frames[i].depth;
        if (!first_error && errors[i]) first_error = errors[i];
      }
    }
    parent->work += extra_work;
    parent->depth = max_depth;
    if (first_error) std::rethrow_exception(first_error);
  }

  template <class T, class Op>
  T reduce_rounds(std::span<const T> items, Op op) {
    for (;;) {
      if (hook_) hook_->round_reset();
      frame().work += items.size();
      frame().depth += ceil_log2(items.size());
      T result = reduce_tree(items, 0, items.size(), op);
      if (!hook_ || hook_->round_commit()) return result;
    }
  }

  template <class T, class Op>
  T reduce_tree(std::span<const T> items, std::size_t lo, std::size_t hi, Op op) {
    if (hi - lo == 1) return items[lo];
    const std::size_t mid = lo + (hi - lo) / 2;
    T left = reduce_tree(items, lo, mid, op);
    T right = reduce_tree(items, mid, hi, op);
    return op(std::move(left), std::move(right));
  }

  void pool_run(std::size_t count, const std::function<void(std::size_t)>& task);

  Backend backend_;
  Frame root_;
  RoundHook* hook_ = nullptr;
  std::unique_ptr<detail::TaskPool> pool_;
};

}  // namespace parsp
