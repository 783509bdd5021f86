#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace fbl {

/// Worker count: FBL_WORKERS if set (clamped to [1, 64]), else the hardware
/// concurrency. Read on every call so tests can change the environment.
int default_workers();

/// Runs fn(lo, hi) over a static partition of [0, n). workers <= 0 means
/// default_workers(). Chunks never overlap and cover [0, n) exactly.
void parallel_chunks(std::size_t n, int workers,
                     const std::function<void(std::size_t, std::size_t)>& fn);

struct Argmax {
  double value = -1e300;
  std::size_t index = 0;
  bool valid = false;

  /// Keeps the larger value; ties go to the smaller index, so the result is
  /// independent of how the index range was chunked.
  void offer(double v, std::size_t i) {
    if (!valid || v > value || (v == value && i < index)) {
      value = v;
      index = i;
      valid = true;
    }
  }

  void merge(const Argmax& other) {
    if (other.valid) offer(other.value, other.index);
  }
};

/// Deterministic parallel argmax of eval(i) over [0, n).
Argmax parallel_argmax(std::size_t n, int workers,
                       const std::function<double(std::size_t)>& eval);

/// Deterministic parallel max of eval(i) over [0, n); 0 for empty ranges.
double parallel_max(std::size_t n, int workers,
                    const std::function<double(std::size_t)>& eval);

}  // namespace fbl
