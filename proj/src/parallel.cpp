#include "lrergo/parallel.hpp"

#include <omp.h>

#include <atomic>

namespace lrergo {

namespace {
std::atomic<int> g_workers{0};
}

void set_worker_count(int n) { g_workers.store(n > 0 ? n : 0); }

int worker_count() {
  int n = g_workers.load();
  return n > 0 ? n : omp_get_max_threads();
}

namespace detail {

void run_indexed(Exec mode, std::int64_t n, void* ctx, void (*body)(void*, std::int64_t)) {
  if (mode == Exec::serial) {
    for (std::int64_t i = 0; i < n; ++i) body(ctx, i);
    return;
  }
  const int nw = worker_count();
#pragma omp parallel for schedule(dynamic) num_threads(nw)
  for (std::int64_t i = 0; i < n; ++i) body(ctx, i);
}

}  // namespace detail

}  // namespace lrergo
