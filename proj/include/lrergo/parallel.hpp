#pragma once

#include <cstdint>
#include <vector>

namespace lrergo {

// Every heavy kernel runs either serially (reference implementation, kept for
// testing) or under OpenMP. Both paths produce per-index slots that are merged
// by a fixed pairwise tree, so results are byte-identical for any worker count.
enum class Exec { serial, openmp };

void set_worker_count(int n);  // n <= 0 restores the OpenMP default
int worker_count();

namespace detail {
void run_indexed(Exec mode, std::int64_t n, void* ctx, void (*body)(void*, std::int64_t));
}

template <class F>
void parallel_for(Exec mode, std::int64_t n, F&& f) {
  detail::run_indexed(mode, n, &f, [](void* ctx, std::int64_t i) { (*static_cast<F*>(ctx))(i); });
}

// Fixed pairwise reduction tree keyed by slot index. The tree shape depends
// only on the slot count, never on thread scheduling.
template <class T>
T reduce_pairwise(std::vector<T> slots, T zero) {
  if (slots.empty()) return zero;
  while (slots.size() > 1) {
    std::size_t half = (slots.size() + 1) / 2;
    for (std::size_t i = 0; 2 * i + 1 < slots.size(); ++i) slots[i] = slots[2 * i] + slots[2 * i + 1];
    if (slots.size() % 2 == 1) slots[half - 1] = slots[slots.size() - 1];
    slots.resize(half);
  }
  return slots[0];
}

}  // namespace lrergo
