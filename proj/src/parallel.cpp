#include "fbl/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>

namespace fbl {

int default_workers() {
  if (const char* env = std::getenv("FBL_WORKERS")) {
    char* end = nullptr;
    long value = std::strtol(env, &end, 10);
    if (end != env && value >= 1) return static_cast<int>(std::min(value, 64L));
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(std::min<unsigned>(hw, 64));
}

void parallel_chunks(std::size_t n, int workers,
                     const std::function<void(std::size_t, std::size_t)>& fn) {
  if (n == 0) return;
  if (workers <= 0) workers = default_workers();
  const std::size_t w = std::min<std::size_t>(workers, n);
  if (w <= 1) {
    fn(0, n);
    return;
  }
  const std::size_t chunk = (n + w - 1) / w;
  std::vector<std::thread> threads;
  threads.reserve(w);
  for (std::size_t i = 0; i < w; ++i) {
    const std::size_t lo = i * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    threads.emplace_back([&fn, lo, hi] { fn(lo, hi); });
  }
  for (auto& t : threads) t.join();
}

Argmax parallel_argmax(std::size_t n, int workers,
                       const std::function<double(std::size_t)>& eval) {
  if (n == 0) return {};
  if (workers <= 0) workers = default_workers();
  const std::size_t w = std::min<std::size_t>(workers, n);
  std::vector<Argmax> locals(w);
  const std::size_t chunk = (n + w - 1) / w;
  parallel_chunks(n, workers, [&](std::size_t lo, std::size_t hi) {
    Argmax local;
    for (std::size_t i = lo; i < hi; ++i) local.offer(eval(i), i);
    locals[lo / chunk] = local;
  });
  Argmax best;
  for (const auto& local : locals) best.merge(local);
  return best;
}

double parallel_max(std::size_t n, int workers,
                    const std::function<double(std::size_t)>& eval) {
  Argmax best = parallel_argmax(n, workers, eval);
  return best.valid ? best.value : 0.0;
}

}  // namespace fbl
