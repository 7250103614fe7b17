#pragma once

#include <vector>

#include "lrergo/common.hpp"

namespace lrergo {

// Time-integration policy for the averaging functionals.
//   breakpoint_exact: split [0,T] at the ray's translation breakpoints, then
//     subdivide each piece into panels at most dt wide (the integrand is
//     smooth inside a piece, so composite Gauss-Legendre converges fast).
//   uniform: equal panels of width dt across [0,T] regardless of breakpoints
//     (cost control; requires dt <= T/10).
struct QuadratureSpec {
  enum class Scheme { breakpoint_exact, uniform };
  Scheme scheme = Scheme::breakpoint_exact;
  double dt = 0.25;
  int per_piece_order = 12;
};

QuadratureSpec::Scheme scheme_from_name(const std::string& name);
std::string scheme_name(QuadratureSpec::Scheme s);

// Gauss-Legendre nodes/weights on [-1, 1]; cached per order.
void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights);

struct Panel {
  double a, b;
};

std::vector<Panel> build_panels(double T, const std::vector<double>& breakpoints,
                                const QuadratureSpec& spec);

// Flattened panel-major node grid over [0, T].
struct NodeGrid {
  std::vector<double> t;
  std::vector<double> w;
  std::vector<Panel> panels;
};

NodeGrid build_grid(double T, const std::vector<double>& breakpoints, const QuadratureSpec& spec,
                    int order_override = 0);

}  // namespace lrergo
