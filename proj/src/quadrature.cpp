#include "lrergo/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

namespace lrergo {

QuadratureSpec::Scheme scheme_from_name(const std::string& name) {
  if (name == "breakpoint_exact") return QuadratureSpec::Scheme::breakpoint_exact;
  if (name == "uniform") return QuadratureSpec::Scheme::uniform;
  throw config_error("unknown quadrature scheme '" + name + "'");
}

std::string scheme_name(QuadratureSpec::Scheme s) {
  return s == QuadratureSpec::Scheme::breakpoint_exact ? "breakpoint_exact" : "uniform";
}

namespace {

struct Rule {
  std::vector<double> x, w;
};

Rule compute_rule(int n) {
  Rule r;
  r.x.resize(n);
  r.w.resize(n);
  // Newton on P_n from the Chebyshev seed; the three-term recurrence also
  // yields P_{n-1} for the derivative. Roots are mirrored for exact symmetry.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    r.x[i] = -z;
    r.x[n - 1 - i] = z;
    double wi = 2.0 / ((1.0 - z * z) * pp * pp);
    r.w[i] = wi;
    r.w[n - 1 - i] = wi;
  }
  return r;
}

const Rule& cached_rule(int n) {
  static std::map<int, Rule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
  return it->second;
}

}  // namespace

void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights) {
  if (order < 1 || order > 128)
    throw std::invalid_argument("gauss_legendre: order must lie in [1, 128]");
  const Rule& r = cached_rule(order);
  nodes = r.x;
  weights = r.w;
}

std::vector<Panel> build_panels(double T, const std::vector<double>& breakpoints,
                                const QuadratureSpec& spec) {
  if (!(T > 0)) throw std::invalid_argument("build_panels: horizon must be positive");
  if (!(spec.dt > 0)) throw std::invalid_argument("build_panels: dt must be positive");
  if (spec.per_piece_order < 1) throw std::invalid_argument("build_panels: order must be >= 1");

  std::vector<Panel> panels;
  if (spec.scheme == QuadratureSpec::Scheme::uniform) {
    if (spec.dt > T / 10.0 + 1e-15)
      throw guard_error("uniform quadrature requires dt <= T/10 (dt=" + fmt_num(spec.dt) +
                        ", T=" + fmt_num(T) + ")");
    const int k = static_cast<int>(std::ceil(T / spec.dt - 1e-12));
    panels.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
      panels.push_back({T * static_cast<double>(i) / k, T * static_cast<double>(i + 1) / k});
    return panels;
  }

  std::vector<double> edges{0.0};
  for (double b : breakpoints)
    if (b > 1e-12 && b < T - 1e-12) edges.push_back(b);
  edges.push_back(T);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double a = edges[i], b = edges[i + 1];
    const int k = std::max(1, static_cast<int>(std::ceil((b - a) / spec.dt - 1e-12)));
    for (int j = 0; j < k; ++j)
      panels.push_back({a + (b - a) * static_cast<double>(j) / k,
                        a + (b - a) * static_cast<double>(j + 1) / k});
  }
  return panels;
}

NodeGrid build_grid(double T, const std::vector<double>& breakpoints, const QuadratureSpec& spec,
                    int order_override) {
  NodeGrid g;
  g.panels = build_panels(T, breakpoints, spec);
  const int p = order_override > 0 ? order_override : spec.per_piece_order;
  std::vector<double> x, w;
  gauss_legendre(p, x, w);
  g.t.reserve(g.panels.size() * x.size());
  g.w.reserve(g.panels.size() * x.size());
  for (const Panel& panel : g.panels) {
    const double mid = 0.5 * (panel.a + panel.b), half = 0.5 * (panel.b - panel.a);
    for (std::size_t j = 0; j < x.size(); ++j) {
      g.t.push_back(mid + half * x[j]);
      g.w.push_back(half * w[j]);
    }
  }
  return g;
}

}  // namespace lrergo
