#include "lrergo/structure_factor.hpp"

#include <cmath>
#include <stdexcept>

namespace lrergo {

namespace {

void check_inputs(const State& s, const EvolutionEngine& eng, const LocalOperator& a,
                  const std::vector<double>& k, const char* fn) {
  if (s.rho.rows() != eng.dim())
    throw std::invalid_argument(std::string(fn) + ": state and engine dimensions differ");
  if (s.site_dim != eng.site_dim() || a.site_dim != eng.site_dim())
    throw std::invalid_argument(std::string(fn) + ": site dimension mismatch");
  if (static_cast<int>(k.size()) != eng.volume.dim())
    throw std::invalid_argument(std::string(fn) + ": wavevector dimension does not match");
  if (eng.volume.boundary != Boundary::periodic)
    throw guard_error(std::string(fn) + ": the site sum needs a periodic torus");
}

// Site sum with one O(dim^2) contraction per site: with X = tau_t(A*) and
// D = B rho,  omega(iota_n(X) B) = tr(X . iota_{-n}(D)).
struct SiteSum {
  const EvolutionEngine* eng;
  Matrix x;  // evolved adjoint(A), full volume
  Matrix d;
  cplx disc;  // omega(A*) omega(B)

  cplx term(const Site& n, const std::vector<double>& k) const {
    bool zero_shift = true;
    for (int c : n) zero_shift = zero_shift && c == 0;
    Matrix dn;
    if (zero_shift) {
      dn = d;
    } else {
      Site neg(n.size());
      for (std::size_t dd = 0; dd < n.size(); ++dd) neg[dd] = -n[dd];
      LocalOperator full{eng->sites(), eng->site_dim(), d};
      dn = translate_op(full, neg, eng->volume).mat;
    }
    cplx val = x.cwiseProduct(dn.transpose()).sum();
    double kn = 0.0;
    for (std::size_t dd = 0; dd < n.size(); ++dd) kn += k[dd] * n[dd];
    return std::polar(1.0, kn) * (val - disc);
  }
};

SiteSum build_site_sum(const State& s, const EvolutionEngine& eng, const LocalOperator& a,
                       const LocalOperator& b, double t) {
  SiteSum ss;
  ss.eng = &eng;
  ss.x = evolve(eng, adjoint(a), t).mat;
  ss.d = embed(b, eng.sites()).mat * s.rho;
  ss.disc = expect(s, adjoint(a)) * expect(s, b);
  return ss;
}

}  // namespace

cplx structure_factor(const State& s, const EvolutionEngine& eng, const LocalOperator& a,
                      const LocalOperator& b, const std::vector<double>& k, double t, Exec exec) {
  check_inputs(s, eng, a, k, "structure_factor");
  check_inputs(s, eng, b, k, "structure_factor");

  SiteSum ss = build_site_sum(s, eng, a, b, t);
  const auto& sites = eng.sites().sites();
  std::vector<cplx> slots(sites.size());
  parallel_for(exec, static_cast<std::int64_t>(sites.size()),
               [&](std::int64_t i) { slots[i] = ss.term(sites[i], k); });
  return reduce_pairwise(std::move(slots), cplx{});
}

namespace {

struct EulerIntegrand {
  const State* s;
  const EvolutionEngine* eng;
  const LocalOperator* a;
  const LocalOperator* b;
  const std::vector<double>* kappa;
  Exec exec;

  cplx operator()(double t) const {
    std::vector<double> k(kappa->size());
    for (std::size_t d = 0; d < k.size(); ++d) k[d] = (*kappa)[d] / t;
    return structure_factor(*s, *eng, *a, *b, k, t, exec);
  }
};

// Adaptive Simpson; the recursion shape depends only on the integrand values,
// so the result is deterministic for any worker count.
struct Simpson {
  const EulerIntegrand& f;
  double tol;
  double err = 0;
  int evals = 0;

  cplx recurse(double a, double b, cplx fa, cplx fm, cplx fb, cplx whole, int depth) {
    double m = 0.5 * (a + b);
    cplx fl = f(0.5 * (a + m));
    cplx fr = f(0.5 * (m + b));
    evals += 2;
    cplx left = (m - a) / 6.0 * (fa + 4.0 * fl + fm);
    cplx right = (b - m) / 6.0 * (fm + 4.0 * fr + fb);
    cplx sum = left + right;
    double disc = std::abs(sum - whole);
    if (depth <= 0 || disc < 15.0 * tol || evals > 4000) {
      err += disc / 15.0;
      return sum + (sum - whole) / 15.0;
    }
    return recurse(a, m, fa, fl, fm, left, depth - 1) +
           recurse(m, b, fm, fr, fb, right, depth - 1);
  }
};

}  // namespace

EulerScaleResult euler_scale_average(const State& s, const EvolutionEngine& eng,
                                     const LocalOperator& a, const LocalOperator& b,
                                     const std::vector<double>& kappa, double T, double t_min,
                                     Exec exec) {
  check_inputs(s, eng, a, kappa, "euler_scale_average");
  check_inputs(s, eng, b, kappa, "euler_scale_average");
  if (!(t_min > 0)) throw std::invalid_argument("euler_scale_average: t_min must be positive");
  if (!(T > t_min))
    throw std::invalid_argument("euler_scale_average: horizon must exceed t_min");

  EulerIntegrand f{&s, &eng, &a, &b, &kappa, exec};
  cplx fa = f(t_min), fb = f(T), fm = f(0.5 * (t_min + T));
  cplx whole = (T - t_min) / 6.0 * (fa + 4.0 * fm + fb);
  double scale = std::max({1.0, std::abs(fa), std::abs(fm), std::abs(fb)});
  Simpson si{f, 1e-9 * scale * (T - t_min)};
  cplx integral = si.recurse(t_min, T, fa, fm, fb, whole, 24);

  EulerScaleResult r;
  r.value = integral / (T - t_min);
  r.T = T;
  r.t_min = t_min;
  r.kappa = kappa;
  r.est_error = (si.err + 1e-14 * (1.0 + std::abs(integral))) / (T - t_min);
  return r;
}

}  // namespace lrergo
