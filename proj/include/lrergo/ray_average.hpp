#pragma once

#include <optional>

#include "lrergo/parallel.hpp"
#include "lrergo/quadrature.hpp"
#include "lrergo/states.hpp"

namespace lrergo {

// Space-time ray: at time t the observable is translated by floor(v unit(q) t).
// The optional modulation pair (k, f) attaches the phase exp(i (k.v_vec - f) t)
// to the oscillatory functionals; k and f must be given together.
struct RaySpec {
  RationalDirection q;
  double v = 0.0;
  std::optional<std::vector<double>> k;
  std::optional<double> f;

  void validate(int lattice_dim) const;
  bool modulated() const { return k.has_value(); }
  double phase_rate() const;  // k . (v unit(q)) - f; 0 when unmodulated
};

struct AverageResult {
  cplx value{};
  double T = 0;
  double quad_error = 0;  // conservative estimate, never negative
  RaySpec ray;
};

// (1/T) integral_0^T omega( iota_{floor(vqt)}(tau_t(A)) B ) dt, unsubtracted.
// Scalar node values are evaluated in the eigenbasis with one cached
// conjugation per translation index.
AverageResult ray_average(const State& s, const EvolutionEngine& eng, const LocalOperator& a,
                          const LocalOperator& b, const RaySpec& ray, double T,
                          const QuadratureSpec& quad, Exec exec = Exec::openmp);

// Phase-weighted average. `connected` (the primary value) integrates
// e^{i theta t} (omega(...) - omega(A) omega(B)); `unsubtracted` keeps the
// full correlator under the same phase.
struct OscillatoryResult {
  AverageResult connected;
  cplx unsubtracted{};
};

OscillatoryResult oscillatory_ray_average(const State& s, const EvolutionEngine& eng,
                                          const LocalOperator& a, const LocalOperator& b,
                                          const RaySpec& ray, double T, const QuadratureSpec& quad,
                                          Exec exec = Exec::openmp);

// Normalized operator average (1/T) integral iota tau (A) dt on the same node
// placement as ray_average; a modulated ray multiplies e^{i theta t} into the
// integrand. This route accumulates explicitly evolved matrices, so it is
// independent of the scalar eigenbasis path.
LocalOperator ray_average_operator(const EvolutionEngine& eng, const LocalOperator& a,
                                   const RaySpec& ray, double T, const QuadratureSpec& quad,
                                   Exec exec = Exec::openmp);

struct ScalarWithError {
  cplx value{};
  double quad_error = 0;
};

// omega( (A-bar_T)^n ) through operator powers of ray_average_operator.
ScalarWithError moment(const State& s, const EvolutionEngine& eng, const LocalOperator& a,
                       const RaySpec& ray, double T, int n, const QuadratureSpec& quad,
                       Exec exec = Exec::openmp);

// (1/(T T')) double integral of omega( iota tau(A) . iota tau(B) ) over the
// product grid; deliberately a scalar double-quadrature, not operator algebra.
ScalarWithError mean_square(const State& s, const EvolutionEngine& eng, const LocalOperator& a,
                            const LocalOperator& b, const RaySpec& ray, double T, double Tprime,
                            const QuadratureSpec& quad, Exec exec = Exec::openmp);

// omega(A_1 Bbar_1 A_2 ... Bbar_n A_{n+1}) with per-factor horizons.
cplx multi_ray_average(const State& s, const EvolutionEngine& eng,
                       const std::vector<LocalOperator>& as, const std::vector<LocalOperator>& bs,
                       const RaySpec& ray, const std::vector<double>& horizons,
                       const QuadratureSpec& quad, Exec exec = Exec::openmp);

// Cesaro partial means along the space-like sequence m -> (m n, m |n|/v),
// m = 0..M-1, M = 1..m_max, with connected versions and, when (k, f) is given,
// the phase e^{-i (k.n - f |n|/v) m}. v may be +infinity (pure space).
struct SpacelikeRow {
  int m_count = 0;
  cplx mean{};
  cplx mean_connected{};
  cplx phased{};
  cplx phased_connected{};
};

std::vector<SpacelikeRow> spacelike_probe(const State& s, const EvolutionEngine& eng,
                                          const LocalOperator& a, const LocalOperator& b,
                                          const Site& n, double v, int m_max,
                                          const std::optional<std::pair<std::vector<double>, double>>& kf,
                                          Exec exec = Exec::openmp);

}  // namespace lrergo
