#pragma once

#include "lrergo/parallel.hpp"
#include "lrergo/states.hpp"

namespace lrergo {

// Connected dynamical structure factor on a periodic torus:
//   S(k, t) = sum_n e^{i k.n} ( omega( iota_n(tau_t(A*)) B ) - omega(A*) omega(B) ),
// the sum running over every torus site. Errors on an open box, where the
// translated supports are not defined for all n.
cplx structure_factor(const State& s, const EvolutionEngine& eng, const LocalOperator& a,
                      const LocalOperator& b, const std::vector<double>& k, double t,
                      Exec exec = Exec::openmp);

struct EulerScaleResult {
  cplx value{};
  double T = 0;
  double t_min = 0;
  std::vector<double> kappa;
  double est_error = 0;  // adaptive-quadrature tolerance actually met
};

// (1/(T - t_min)) integral_{t_min}^T S(kappa / t, t) dt along the hydrodynamic
// scale k = kappa / t; the lower cutoff keeps kappa / t bounded and is
// reported back in the result.
EulerScaleResult euler_scale_average(const State& s, const EvolutionEngine& eng,
                                     const LocalOperator& a, const LocalOperator& b,
                                     const std::vector<double>& kappa, double T,
                                     double t_min = 1.0, Exec exec = Exec::openmp);

}  // namespace lrergo
