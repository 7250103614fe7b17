#pragma once

#include "lrergo/common.hpp"
#include "lrergo/operator_algebra.hpp"

namespace lrergo::testing {

inline Matrix random_matrix(Rng& rng, std::int64_t d) {
  Matrix m(d, d);
  for (std::int64_t j = 0; j < d; ++j)
    for (std::int64_t i = 0; i < d; ++i) m(i, j) = rng.cnormal();
  return m;
}

inline Matrix random_hermitian(Rng& rng, std::int64_t d) {
  Matrix m = random_matrix(rng, d);
  return Matrix(0.5 * (m + m.adjoint()));
}

inline LocalOperator random_op(Rng& rng, const Region& support, int site_dim) {
  return LocalOperator(support, site_dim, random_matrix(rng, hilbert_dim(site_dim, support.size())));
}

inline LocalOperator random_hermitian_op(Rng& rng, const Region& support, int site_dim) {
  return LocalOperator(support, site_dim, random_hermitian(rng, hilbert_dim(site_dim, support.size())));
}

}  // namespace lrergo::testing
