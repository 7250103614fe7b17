// Times the OpenMP kernels against the serial reference on a medium chain.
// Values must agree bitwise (the reduction tree is fixed), so the comparison
// column doubles as a correctness spot check.  Usage:
//   lrergo-bench [L] [repeats]
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "lrergo/certify.hpp"
#include "lrergo/model.hpp"
#include "lrergo/pauli_string.hpp"
#include "lrergo/ray_average.hpp"
#include "lrergo/structure_factor.hpp"
#include "lrergo/sweep.hpp"

using namespace lrergo;

namespace {

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

struct Timing {
  double serial_ms = 0;
  double openmp_ms = 0;
  bool identical = false;
};

template <class F>
Timing time_both(int repeats, F&& run) {
  Timing t;
  // Warm once so eigen scratch buffers and quadrature caches are allocated.
  cplx ref = run(Exec::serial);
  cplx par = run(Exec::openmp);
  t.identical = std::memcmp(&ref, &par, sizeof ref) == 0;

  double best = 1e300;
  for (int i = 0; i < repeats; ++i) {
    double t0 = now_ms();
    volatile cplx sink = run(Exec::serial);
    (void)sink;
    best = std::min(best, now_ms() - t0);
  }
  t.serial_ms = best;

  best = 1e300;
  for (int i = 0; i < repeats; ++i) {
    double t0 = now_ms();
    volatile cplx sink = run(Exec::openmp);
    (void)sink;
    best = std::min(best, now_ms() - t0);
  }
  t.openmp_ms = best;
  return t;
}

void report(const char* name, const Timing& t) {
  std::printf("%-24s %10.2f ms %10.2f ms %8.2fx   %s\n", name, t.serial_ms, t.openmp_ms,
              t.openmp_ms > 0 ? t.serial_ms / t.openmp_ms : 0.0,
              t.identical ? "bitwise equal" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  int L = argc > 1 ? std::atoi(argv[1]) : 8;
  int repeats = argc > 2 ? std::atoi(argv[2]) : 3;
  if (L < 2 || L > 14 || repeats < 1) {
    std::fprintf(stderr, "usage: lrergo-bench [L in 2..14] [repeats >= 1]\n");
    return 2;
  }

  Torus t{{L}, Boundary::periodic};
  Interaction phi = build_preset({PresetKind::tilted_ising, 1.0, 1.05, 0.5}, t, std::log(2.0));
  std::printf("chain L=%d (dim %lld), workers=%d, repeats=%d (best-of)\n", L,
              1ll << L, worker_count(), repeats);

  double t0 = now_ms();
  EvolutionEngine eng = build_engine(hamiltonian(phi, t), t);
  std::printf("engine build (eigendecomposition): %.1f ms\n\n", now_ms() - t0);
  State s = tracial_state(eng);
  LocalOperator a = PauliString::parse("Z@(0)").to_operator();
  LocalOperator b = PauliString::parse("X@(0)").to_operator();
  QuadratureSpec quad;
  RaySpec ray{RationalDirection::of({1}), 1.0, {}, {}};

  std::printf("%-24s %13s %13s %9s\n", "kernel", "serial", "openmp", "speedup");

  report("ray_average T=10", time_both(repeats, [&](Exec e) {
           return ray_average(s, eng, a, b, ray, 10.0, quad, e).value;
         }));

  report("mean_square T=4", time_both(repeats, [&](Exec e) {
           return mean_square(s, eng, a, b, ray, 4.0, 4.0, quad, e).value;
         }));

  report("structure_factor", time_both(repeats, [&](Exec e) {
           return structure_factor(s, eng, a, b, {0.5}, 1.0, e);
         }));

  report("sweep 3x3 cells", time_both(repeats, [&](Exec e) {
           auto cells = convergence_sweep(s, eng, a, b, ray, {0.0, 0.5, 1.0}, {1.0, 2.0, 3.0},
                                          SweepMode::plain, 2, quad, e);
           cplx acc = 0;
           for (const auto& c : cells) acc += c.value;
           return acc;
         }));

  report("certificate 1x8 rows", time_both(repeats, [&](Exec e) {
           std::vector<double> times(8);
           for (int i = 0; i < 8; ++i) times[i] = 0.1 * i;
           auto cert = lr_certificate(
               eng, phi, {{{"a", a}, {"b", PauliString::parse("Z@(" + std::to_string(L / 2) + ")").to_operator()}}},
               times, e);
           double acc = 0;
           for (const auto& r : cert.rows) acc += r.empirical;
           return cplx(acc, 0);
         }));

  return 0;
}
