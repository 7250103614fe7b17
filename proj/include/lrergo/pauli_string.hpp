#pragma once

#include <string>
#include <vector>

#include "lrergo/operator_algebra.hpp"

namespace lrergo {

// A scalar multiple of a tensor product of single-site factors, e.g.
//   "1.0 * X@(0) Z@(1,0)"        Pauli letters for site_dim 2
//   "0.5 * M@(0)=[[0,1],[1,0]]"  explicit matrix for other site dims
// The coefficient may be real ("-2"), imaginary ("0.5i"), or "a+bi"/"(a,b)".
struct PauliString {
  cplx coeff{1.0, 0.0};
  std::vector<std::pair<Site, Matrix>> factors;  // distinct sites
  int site_dim = 2;

  static PauliString parse(const std::string& text);
  LocalOperator to_operator() const;
};

Matrix pauli_matrix(char letter);  // I, X, Y, Z

}  // namespace lrergo
