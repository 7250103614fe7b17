#pragma once

#include <Eigen/Dense>

#include "lrergo/common.hpp"
#include "lrergo/lattice.hpp"

namespace lrergo {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// N^m with the global dimension-cap guard.
std::int64_t hilbert_dim(int site_dim, std::size_t n_sites);

// Finite-volume observable: a dense matrix acting on the sites of `support`
// (sorted order = tensor-leg order), identity implied elsewhere.
struct LocalOperator {
  Region support;
  int site_dim = 2;
  Matrix mat;

  LocalOperator() = default;
  LocalOperator(Region support, int site_dim, Matrix m);

  std::int64_t dim() const { return mat.rows(); }

  static LocalOperator identity(const Region& support, int site_dim);
  static LocalOperator zero(const Region& support, int site_dim);
};

// Identity-padding into a larger region; errors unless larger contains support.
LocalOperator embed(const LocalOperator& a, const Region& larger);

LocalOperator compose(const LocalOperator& a, const LocalOperator& b);  // product, auto-embedded
LocalOperator add(const LocalOperator& a, const LocalOperator& b);
LocalOperator sub(const LocalOperator& a, const LocalOperator& b);
LocalOperator scale(const cplx& c, const LocalOperator& a);
LocalOperator adjoint(const LocalOperator& a);

// [A,B]; structurally the exact zero matrix when supports are disjoint.
LocalOperator commutator(const LocalOperator& a, const LocalOperator& b);

double operator_norm(const LocalOperator& a);  // largest singular value
double operator_norm(const Matrix& m);

// Lattice translation by n; wraps on a periodic torus (legs reordered to keep
// the sorted-site convention), errors off the open box.
LocalOperator translate_op(const LocalOperator& a, const Site& n, const Torus& t);

// Conditional expectation onto the sites of `onto`: normalized partial trace
// over support \ onto. Unital, idempotent, norm-nonincreasing.
LocalOperator localize(const LocalOperator& a, const Region& onto);

cplx trace_of(const LocalOperator& a);
double hermiticity_defect(const Matrix& m);  // max |M - M*| entry

}  // namespace lrergo
