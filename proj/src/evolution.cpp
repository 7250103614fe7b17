#include "lrergo/evolution.hpp"

#include <cmath>
#include <stdexcept>

namespace lrergo {

Matrix EvolutionEngine::to_eigenbasis(const LocalOperator& a) const {
  LocalOperator full = embed(a, h.support);
  return evecs.adjoint() * full.mat * evecs;
}

Matrix EvolutionEngine::from_eigenbasis(const Matrix& m) const {
  return evecs * m * evecs.adjoint();
}

EvolutionEngine build_engine(const LocalOperator& h, const Torus& volume) {
  Region box = volume.all_sites();
  if (!box.contains(h.support))
    throw std::invalid_argument("build_engine: hamiltonian support leaves the volume");
  hilbert_dim(h.site_dim, box.size());  // cap guard before the dense embed

  LocalOperator hfull = embed(h, box);
  double scale = std::max(1.0, hfull.mat.cwiseAbs().maxCoeff());
  if (hermiticity_defect(hfull.mat) > 1e-10 * scale)
    throw std::invalid_argument("build_engine: hamiltonian is not self-adjoint (defect " +
                                fmt_num(hermiticity_defect(hfull.mat)) + ")");

  EvolutionEngine eng;
  eng.volume = volume;
  Eigen::SelfAdjointEigenSolver<Matrix> es(hfull.mat);
  if (es.info() != Eigen::Success) throw std::runtime_error("build_engine: eigensolver failed");
  eng.evals = es.eigenvalues();
  eng.evecs = es.eigenvectors();
  eng.h = std::move(hfull);

  const std::int64_t d = eng.h.dim();
  double hnorm = std::max(1e-300, std::abs(eng.evals.cwiseAbs().maxCoeff()));
  Matrix recon_m = eng.evecs * eng.evals.cast<cplx>().asDiagonal() * eng.evecs.adjoint();
  double recon = (recon_m - eng.h.mat).cwiseAbs().maxCoeff();
  if (recon > 1e-9 * hnorm)
    throw std::runtime_error("build_engine: eigendecomposition residual " + fmt_num(recon));
  double unit = (eng.evecs.adjoint() * eng.evecs - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (unit > 1e-10) throw std::runtime_error("build_engine: eigenvector matrix is not unitary");
  return eng;
}

namespace {

// diag(exp(i t E)) M diag(exp(-i t E)) without forming the diagonals as matrices.
Matrix phase_conjugate(const Eigen::VectorXd& evals, const Matrix& m, double t) {
  const Eigen::Index d = m.rows();
  Vector ph(d);
  for (Eigen::Index j = 0; j < d; ++j) ph(j) = std::polar(1.0, t * evals(j));
  return ph.asDiagonal() * m * ph.conjugate().asDiagonal();
}

}  // namespace

LocalOperator evolve(const EvolutionEngine& eng, const LocalOperator& a, double t) {
  Matrix tilde = eng.to_eigenbasis(a);
  return LocalOperator(eng.sites(), eng.site_dim(),
                       eng.from_eigenbasis(phase_conjugate(eng.evals, tilde, t)));
}

LocalOperator evolve_imaginary(const EvolutionEngine& eng, const LocalOperator& b, double beta) {
  const double spread = eng.evals.maxCoeff() - eng.evals.minCoeff();
  if (std::abs(beta) * spread > 300.0)
    throw guard_error("evolve_imaginary: |beta| * spectral spread = " +
                      fmt_num(std::abs(beta) * spread) + " exceeds the overflow guard 300");
  Matrix tilde = eng.to_eigenbasis(b);
  const Eigen::Index d = tilde.rows();
  for (Eigen::Index k = 0; k < d; ++k)
    for (Eigen::Index j = 0; j < d; ++j)
      tilde(j, k) *= std::exp(-beta * (eng.evals(j) - eng.evals(k)));
  return LocalOperator(eng.sites(), eng.site_dim(), eng.from_eigenbasis(tilde));
}

std::vector<LocalOperator> evolve_grid(const EvolutionEngine& eng, const LocalOperator& a,
                                       const std::vector<double>& times) {
  Matrix tilde = eng.to_eigenbasis(a);
  std::vector<LocalOperator> out;
  out.reserve(times.size());
  for (double t : times)
    out.emplace_back(eng.sites(), eng.site_dim(),
                     eng.from_eigenbasis(phase_conjugate(eng.evals, tilde, t)));
  return out;
}

}  // namespace lrergo
