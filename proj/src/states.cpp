#include "lrergo/states.hpp"

#include <cmath>
#include <stdexcept>

namespace lrergo {

State State::make(Matrix rho, const Torus& volume, int site_dim, std::optional<double> beta,
                  std::string label) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("State: density matrix must be square");
  if (hermiticity_defect(rho) > 1e-10)
    throw std::invalid_argument("State: density matrix is not self-adjoint");
  cplx tr = rho.trace();
  if (std::abs(tr - cplx(1.0)) > 1e-10)
    throw std::invalid_argument("State: trace is " + fmt_cplx(tr) + ", expected 1");
  if (rho.rows() <= 4096) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10)
      throw std::invalid_argument("State: negative eigenvalue " + fmt_num(es.eigenvalues().minCoeff()));
  }
  State s;
  s.rho = std::move(rho);
  s.volume = volume;
  s.site_dim = site_dim;
  s.beta = beta;
  s.label = std::move(label);
  return s;
}

State gibbs_state(const EvolutionEngine& eng, double beta) {
  const Eigen::Index d = eng.dim();
  Eigen::VectorXd w(d);
  const double emin = eng.evals.minCoeff();
  double z = 0.0;
  for (Eigen::Index j = 0; j < d; ++j) {
    w(j) = std::exp(-beta * (eng.evals(j) - emin));
    z += w(j);
  }
  Matrix rho = eng.evecs * (w / z).cast<cplx>().asDiagonal() * eng.evecs.adjoint();
  // Symmetrize away the last bits of rounding so validation stays exact.
  rho = 0.5 * (rho + Matrix(rho.adjoint()));
  return State::make(std::move(rho), eng.volume, eng.site_dim(), beta,
                     "gibbs(beta=" + fmt_num(beta) + ")");
}

State tracial_state(const EvolutionEngine& eng) {
  const Eigen::Index d = eng.dim();
  Matrix rho = Matrix::Identity(d, d) / static_cast<double>(d);
  State s = State::make(std::move(rho), eng.volume, eng.site_dim(), std::nullopt, "tracial");
  return s;
}

State product_state(const Torus& volume, int site_dim, const std::vector<Vector>& site_vectors) {
  const std::size_t n = volume.all_sites().size();
  if (site_vectors.empty()) throw std::invalid_argument("product_state: no site vectors");
  if (site_vectors.size() != 1 && site_vectors.size() != n)
    throw std::invalid_argument("product_state: expected 1 or " + std::to_string(n) + " vectors");
  Vector psi = Vector::Ones(1);
  for (std::size_t i = 0; i < n; ++i) {
    const Vector& v = site_vectors[site_vectors.size() == 1 ? 0 : i];
    if (v.size() != site_dim)
      throw std::invalid_argument("product_state: vector length " + std::to_string(v.size()) +
                                  " does not match site_dim " + std::to_string(site_dim));
    double nrm = v.norm();
    if (nrm < 1e-14) throw std::invalid_argument("product_state: zero site vector");
    Vector u = v / nrm;
    Vector next(psi.size() * site_dim);
    for (Eigen::Index a = 0; a < psi.size(); ++a)
      for (int b = 0; b < site_dim; ++b) next(a * site_dim + b) = psi(a) * u(b);
    psi = std::move(next);
  }
  Matrix rho = psi * psi.adjoint();
  return State::make(std::move(rho), volume, site_dim, std::nullopt, "product");
}

cplx expect(const State& s, const LocalOperator& a) {
  LocalOperator full = embed(a, s.volume.all_sites());
  if (full.dim() != s.rho.rows())
    throw std::invalid_argument("expect: operator dimension does not match the state");
  return (s.rho * full.mat).trace();
}

cplx connected_correlator(const State& s, const EvolutionEngine& eng, const LocalOperator& a,
                          const LocalOperator& b, const Site& n, double t) {
  LocalOperator moved = translate_op(evolve(eng, a, t), n, s.volume);
  cplx joint = expect(s, compose(moved, b));
  return joint - expect(s, a) * expect(s, b);
}

double kms_residual(const State& s, const EvolutionEngine& eng, const LocalOperator& a,
                    const LocalOperator& b, double beta) {
  LocalOperator shifted = evolve_imaginary(eng, b, beta);
  cplx lhs = expect(s, compose(a, shifted));
  cplx rhs = expect(s, compose(b, a));
  return std::abs(lhs - rhs);
}

InvarianceReport invariance_check(const State& s, const EvolutionEngine& eng,
                                  const std::vector<LocalOperator>& ops,
                                  const std::vector<double>& times,
                                  const std::vector<Site>& shifts) {
  InvarianceReport rep;
  for (const LocalOperator& a : ops) {
    const cplx base = expect(s, a);
    for (double t : times)
      rep.max_time_deviation =
          std::max(rep.max_time_deviation, std::abs(expect(s, evolve(eng, a, t)) - base));
    for (const Site& n : shifts)
      rep.max_space_deviation =
          std::max(rep.max_space_deviation, std::abs(expect(s, translate_op(a, n, s.volume)) - base));
  }
  return rep;
}

}  // namespace lrergo
