#pragma once

#include <vector>

#include "lrergo/operator_algebra.hpp"

namespace lrergo {

// Exact propagator on a finite volume: one dense eigendecomposition of H,
// reused for every (operator, time) pair afterwards.
struct EvolutionEngine {
  Torus volume;
  LocalOperator h;              // embedded on the full volume
  Eigen::VectorXd evals;
  Matrix evecs;                 // unitary U with H = U diag(evals) U*

  std::int64_t dim() const { return h.dim(); }
  int site_dim() const { return h.site_dim; }
  const Region& sites() const { return h.support; }

  // A in the eigenbasis: U* embed(A) U. The workhorse behind evolve and the
  // scalar averaging kernels.
  Matrix to_eigenbasis(const LocalOperator& a) const;
  Matrix from_eigenbasis(const Matrix& m) const;
};

// Checks self-adjointness (1e-10), the dimension cap, the reconstruction
// residual (1e-9 relative) and unitarity of U (1e-10).
EvolutionEngine build_engine(const LocalOperator& h, const Torus& volume);

// Heisenberg evolution e^{itH} A e^{-itH}, support widened to the full volume.
LocalOperator evolve(const EvolutionEngine& eng, const LocalOperator& a, double t);

// e^{-beta H} B e^{beta H}; errors when beta * spread(evals) > 300.
LocalOperator evolve_imaginary(const EvolutionEngine& eng, const LocalOperator& b, double beta);

// Shares the eigenbasis transform of A across all times.
std::vector<LocalOperator> evolve_grid(const EvolutionEngine& eng, const LocalOperator& a,
                                       const std::vector<double>& times);

}  // namespace lrergo
