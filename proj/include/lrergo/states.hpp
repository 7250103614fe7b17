#pragma once

#include <optional>
#include <string>

#include "lrergo/evolution.hpp"

namespace lrergo {

// Density matrix on the engine volume. Construction validates hermiticity
// (1e-10), unit trace (1e-10) and, for moderate dimensions, positivity
// (eigenvalues >= -1e-10).
struct State {
  Matrix rho;
  Torus volume;
  int site_dim = 2;
  std::optional<double> beta;
  std::string label;

  static State make(Matrix rho, const Torus& volume, int site_dim,
                    std::optional<double> beta, std::string label);
};

// exp(-beta H)/Z computed from the cached spectrum with the max eigenvalue
// shifted out; beta = 0 degenerates to the tracial state.
State gibbs_state(const EvolutionEngine& eng, double beta);

State tracial_state(const EvolutionEngine& eng);

// Tensor product of per-site unit vectors (normalized here); one vector may
// stand for every site.
State product_state(const Torus& volume, int site_dim,
                    const std::vector<Vector>& site_vectors);

cplx expect(const State& s, const LocalOperator& a);

// omega( iota_n(tau_t(A)) . B ) - omega(A) omega(B)
cplx connected_correlator(const State& s, const EvolutionEngine& eng, const LocalOperator& a,
                          const LocalOperator& b, const Site& n, double t);

// | omega(A tau_{i beta}(B)) - omega(B A) |
double kms_residual(const State& s, const EvolutionEngine& eng, const LocalOperator& a,
                    const LocalOperator& b, double beta);

struct InvarianceReport {
  double max_time_deviation = 0.0;   // |omega(tau_t A) - omega(A)| over samples
  double max_space_deviation = 0.0;  // |omega(iota_n A) - omega(A)| over samples
};

InvarianceReport invariance_check(const State& s, const EvolutionEngine& eng,
                                  const std::vector<LocalOperator>& ops,
                                  const std::vector<double>& times,
                                  const std::vector<Site>& shifts);

}  // namespace lrergo
