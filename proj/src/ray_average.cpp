#include "lrergo/ray_average.hpp"

#include <cmath>
#include <complex>
#include <cstring>
#include <stdexcept>

namespace lrergo {

namespace {

Site negate(const Site& n) {
  Site out(n.size());
  for (std::size_t d = 0; d < n.size(); ++d) out[d] = -n[d];
  return out;
}

Site scale_site(const Site& n, int m) {
  Site out(n.size());
  for (std::size_t d = 0; d < n.size(); ++d) out[d] = m * n[d];
  return out;
}

void check_compat(const State& s, const EvolutionEngine& eng, const LocalOperator& a,
                  const char* fn) {
  if (s.rho.rows() != eng.dim())
    throw std::invalid_argument(std::string(fn) + ": state and engine dimensions differ");
  if (s.site_dim != eng.site_dim() || a.site_dim != eng.site_dim())
    throw std::invalid_argument(std::string(fn) + ": site dimension mismatch");
}

// Scalar correlator kernel. With D = embed(B) rho and D_n = iota_{-n}(D),
//   omega( iota_n(tau_t(A)) B ) = sum_{jk} e^{i t (E_j - E_k)} M(n)_{jk},
//   M(n) = (U* embed(A) U) .* (U* D_n U)^T,
// so each distinct translation costs two dense products and each time node
// costs O(dim^2).
struct ScalarKernel {
  const EvolutionEngine* eng = nullptr;
  Matrix atilde;
  Matrix d;

  static ScalarKernel build(const State& s, const EvolutionEngine& eng, const LocalOperator& a,
                            const LocalOperator& b) {
    ScalarKernel k;
    k.eng = &eng;
    k.atilde = eng.to_eigenbasis(a);
    k.d = embed(b, eng.sites()).mat * s.rho;
    return k;
  }

  Matrix prepare(const Site& n) const {
    bool zero_shift = true;
    for (int c : n) zero_shift = zero_shift && c == 0;
    Matrix dn;
    if (zero_shift) {
      dn = d;
    } else {
      LocalOperator full{eng->sites(), eng->site_dim(), d};
      dn = translate_op(full, negate(n), eng->volume).mat;
    }
    Matrix ct = eng->evecs.adjoint() * dn * eng->evecs;
    return atilde.cwiseProduct(ct.transpose());
  }

  cplx eval(const Matrix& m, double t) const {
    const auto dim = eng->dim();
    Vector u(dim);
    for (std::int64_t j = 0; j < dim; ++j) u[j] = std::polar(1.0, t * eng->evals[j]);
    return (u.transpose() * (m * u.conjugate()))(0);
  }
};

struct NodeValues {
  std::vector<cplx> g;
  std::vector<std::size_t> run_starts;  // indices where the translation index changes
};

NodeValues eval_nodes(const ScalarKernel& kern, const RaySpec& ray, const NodeGrid& grid,
                      Exec exec) {
  NodeValues out;
  const std::size_t n = grid.t.size();
  out.g.resize(n);
  std::size_t i = 0;
  while (i < n) {
    Site step = ray_point(ray.v, ray.q, grid.t[i]);
    std::size_t j = i + 1;
    while (j < n && ray_point(ray.v, ray.q, grid.t[j]) == step) ++j;
    out.run_starts.push_back(i);
    Matrix m = kern.prepare(step);
    parallel_for(exec, static_cast<std::int64_t>(j - i),
                 [&](std::int64_t kk) { out.g[i + kk] = kern.eval(m, grid.t[i + kk]); });
    i = j;
  }
  return out;
}

struct Sums {
  cplx plain{};
  cplx conn{};
  cplx unsub{};
  double l1 = 0;
};

Sums weighted_sums(const NodeGrid& grid, const std::vector<cplx>& g, double theta, cplx ref) {
  const std::size_t n = g.size();
  std::vector<cplx> sp(n), sc(n), su(n);
  Sums out;
  for (std::size_t i = 0; i < n; ++i) {
    cplx ph = theta == 0.0 ? cplx(1, 0) : std::polar(1.0, theta * grid.t[i]);
    sp[i] = grid.w[i] * g[i];
    su[i] = grid.w[i] * ph * g[i];
    sc[i] = grid.w[i] * ph * (g[i] - ref);
    out.l1 += std::abs(grid.w[i]) * std::abs(g[i]);
  }
  out.plain = reduce_pairwise(std::move(sp), cplx{});
  out.conn = reduce_pairwise(std::move(sc), cplx{});
  out.unsub = reduce_pairwise(std::move(su), cplx{});
  return out;
}

// Panels of the uniform scheme may straddle translation breakpoints, which
// Gauss-Legendre cannot see; charge each interior run boundary with the local
// jump times the panel measure.
double uniform_jump_penalty(const QuadratureSpec& quad, const NodeGrid& grid,
                            const NodeValues& nv, double T) {
  if (quad.scheme != QuadratureSpec::Scheme::uniform || grid.panels.empty()) return 0.0;
  double dt_eff = T / static_cast<double>(grid.panels.size());
  double pen = 0.0;
  for (std::size_t r = 1; r < nv.run_starts.size(); ++r) {
    std::size_t b = nv.run_starts[r];
    pen += (dt_eff / T) * std::abs(nv.g[b] - nv.g[b - 1]);
  }
  return pen;
}

int low_order(const QuadratureSpec& quad) { return std::max(1, quad.per_piece_order / 2); }

double error_floor(double l1_over_norm) { return 1e-14 * (1.0 + l1_over_norm); }

void require_horizon(double T, const char* fn) {
  if (!(T > 0) || !std::isfinite(T))
    throw std::invalid_argument(std::string(fn) + ": horizon must be positive and finite");
}

}  // namespace

void RaySpec::validate(int lattice_dim) const {
  if (q.dim() != lattice_dim)
    throw std::invalid_argument("ray direction dimension does not match the lattice");
  if (!std::isfinite(v)) throw std::invalid_argument("ray velocity must be finite");
  if (k.has_value() != f.has_value())
    throw std::invalid_argument("ray modulation needs both k and f (or neither)");
  if (k && static_cast<int>(k->size()) != lattice_dim)
    throw std::invalid_argument("modulation wavevector dimension does not match the lattice");
}

double RaySpec::phase_rate() const {
  if (!modulated()) return 0.0;
  double dot = 0.0;
  for (std::size_t d = 0; d < k->size(); ++d)
    dot += (*k)[d] * v * static_cast<double>(q.q[d]) / static_cast<double>(q.den);
  return dot - *f;
}

AverageResult ray_average(const State& s, const EvolutionEngine& eng, const LocalOperator& a,
                          const LocalOperator& b, const RaySpec& ray, double T,
                          const QuadratureSpec& quad, Exec exec) {
  check_compat(s, eng, a, "ray_average");
  check_compat(s, eng, b, "ray_average");
  ray.validate(eng.volume.dim());
  require_horizon(T, "ray_average");

  auto bps = ray_breakpoints(ray.v, ray.q, T);
  NodeGrid gp = build_grid(T, bps, quad);
  NodeGrid gq = build_grid(T, bps, quad, low_order(quad));
  ScalarKernel kern = ScalarKernel::build(s, eng, a, b);
  NodeValues vp = eval_nodes(kern, ray, gp, exec);
  NodeValues vq = eval_nodes(kern, ray, gq, exec);
  Sums sp = weighted_sums(gp, vp.g, 0.0, cplx{});
  Sums sq = weighted_sums(gq, vq.g, 0.0, cplx{});

  AverageResult r;
  r.value = sp.plain / T;
  r.T = T;
  r.ray = ray;
  r.quad_error = std::abs(sp.plain - sq.plain) / T + uniform_jump_penalty(quad, gp, vp, T) +
                 error_floor(sp.l1 / T);
  return r;
}

OscillatoryResult oscillatory_ray_average(const State& s, const EvolutionEngine& eng,
                                          const LocalOperator& a, const LocalOperator& b,
                                          const RaySpec& ray, double T, const QuadratureSpec& quad,
                                          Exec exec) {
  check_compat(s, eng, a, "oscillatory_ray_average");
  check_compat(s, eng, b, "oscillatory_ray_average");
  ray.validate(eng.volume.dim());
  require_horizon(T, "oscillatory_ray_average");

  double theta = ray.phase_rate();
  cplx ref = expect(s, a) * expect(s, b);
  auto bps = ray_breakpoints(ray.v, ray.q, T);
  NodeGrid gp = build_grid(T, bps, quad);
  NodeGrid gq = build_grid(T, bps, quad, low_order(quad));
  ScalarKernel kern = ScalarKernel::build(s, eng, a, b);
  NodeValues vp = eval_nodes(kern, ray, gp, exec);
  NodeValues vq = eval_nodes(kern, ray, gq, exec);
  Sums sp = weighted_sums(gp, vp.g, theta, ref);
  Sums sq = weighted_sums(gq, vq.g, theta, ref);

  OscillatoryResult r;
  r.connected.value = sp.conn / T;
  r.connected.T = T;
  r.connected.ray = ray;
  r.connected.quad_error = std::abs(sp.conn - sq.conn) / T +
                           uniform_jump_penalty(quad, gp, vp, T) + error_floor(sp.l1 / T);
  r.unsubtracted = sp.unsub / T;
  return r;
}

namespace {

// Shared by the public operator average and its low-order error pass.
Matrix operator_average_on_grid(const EvolutionEngine& eng, const LocalOperator& a,
                                const RaySpec& ray, double T, const NodeGrid& grid, Exec exec) {
  const auto dim = eng.dim();
  double theta = ray.phase_rate();
  Matrix atilde = eng.to_eigenbasis(a);
  Matrix acc = Matrix::Zero(dim, dim);
  const std::size_t n = grid.t.size();
  constexpr std::size_t kBlock = 16;  // bounded scratch, order-independent merge
  std::vector<Matrix> buf(std::min(kBlock, n == 0 ? std::size_t(1) : n));
  for (std::size_t start = 0; start < n; start += kBlock) {
    std::size_t count = std::min(kBlock, n - start);
    parallel_for(exec, static_cast<std::int64_t>(count), [&](std::int64_t kk) {
      std::size_t i = start + static_cast<std::size_t>(kk);
      double t = grid.t[i];
      Vector u(dim);
      for (std::int64_t j = 0; j < dim; ++j) u[j] = std::polar(1.0, t * eng.evals[j]);
      Matrix x = eng.evecs * (u.asDiagonal() * atilde * u.conjugate().asDiagonal()) *
                 eng.evecs.adjoint();
      LocalOperator evolved{eng.sites(), eng.site_dim(), std::move(x)};
      Site step = ray_point(ray.v, ray.q, t);
      LocalOperator shifted = translate_op(evolved, step, eng.volume);
      cplx ph = theta == 0.0 ? cplx(1, 0) : std::polar(1.0, theta * t);
      buf[kk] = (grid.w[i] * ph) * shifted.mat;
    });
    for (std::size_t kk = 0; kk < count; ++kk) acc += buf[kk];
  }
  return acc / T;
}

}  // namespace

LocalOperator ray_average_operator(const EvolutionEngine& eng, const LocalOperator& a,
                                   const RaySpec& ray, double T, const QuadratureSpec& quad,
                                   Exec exec) {
  if (a.site_dim != eng.site_dim())
    throw std::invalid_argument("ray_average_operator: site dimension mismatch");
  ray.validate(eng.volume.dim());
  require_horizon(T, "ray_average_operator");
  auto bps = ray_breakpoints(ray.v, ray.q, T);
  NodeGrid grid = build_grid(T, bps, quad);
  return LocalOperator{eng.sites(), eng.site_dim(),
                       operator_average_on_grid(eng, a, ray, T, grid, exec)};
}

ScalarWithError moment(const State& s, const EvolutionEngine& eng, const LocalOperator& a,
                       const RaySpec& ray, double T, int n, const QuadratureSpec& quad,
                       Exec exec) {
  check_compat(s, eng, a, "moment");
  ray.validate(eng.volume.dim());
  require_horizon(T, "moment");
  if (n < 1) throw std::invalid_argument("moment: power must be >= 1");

  auto bps = ray_breakpoints(ray.v, ray.q, T);
  auto value_at = [&](int order) {
    NodeGrid grid = build_grid(T, bps, quad, order);
    Matrix w = operator_average_on_grid(eng, a, ray, T, grid, exec);
    Matrix p = w;
    for (int i = 1; i < n; ++i) p = p * w;
    return (s.rho * p).trace();
  };
  cplx vp = value_at(0);  // 0 keeps the configured order
  cplx vq = value_at(low_order(quad));
  ScalarWithError r;
  r.value = vp;
  r.quad_error = std::abs(vp - vq) + error_floor(std::abs(vp));
  return r;
}

ScalarWithError mean_square(const State& s, const EvolutionEngine& eng, const LocalOperator& a,
                            const LocalOperator& b, const RaySpec& ray, double T, double Tprime,
                            const QuadratureSpec& quad, Exec exec) {
  check_compat(s, eng, a, "mean_square");
  check_compat(s, eng, b, "mean_square");
  ray.validate(eng.volume.dim());
  require_horizon(T, "mean_square");
  require_horizon(Tprime, "mean_square");

  const auto dim = eng.dim();
  Matrix atilde = eng.to_eigenbasis(a);
  Matrix btilde = eng.to_eigenbasis(b);

  auto evolved_full = [&](const Matrix& tilde, double t, const Site& step) {
    Vector u(dim);
    for (std::int64_t j = 0; j < dim; ++j) u[j] = std::polar(1.0, t * eng.evals[j]);
    Matrix x =
        eng.evecs * (u.asDiagonal() * tilde * u.conjugate().asDiagonal()) * eng.evecs.adjoint();
    bool zero_shift = true;
    for (int c : step) zero_shift = zero_shift && c == 0;
    if (zero_shift) return x;
    LocalOperator full{eng.sites(), eng.site_dim(), std::move(x)};
    return translate_op(full, step, eng.volume).mat;
  };

  auto value_at = [&](int order) {
    NodeGrid g1 = build_grid(T, ray_breakpoints(ray.v, ray.q, T), quad, order);
    NodeGrid g2 = build_grid(Tprime, ray_breakpoints(ray.v, ray.q, Tprime), quad, order);
    const std::size_t n1 = g1.t.size(), n2 = g2.t.size();
    double bytes = static_cast<double>(n2) * static_cast<double>(dim) * static_cast<double>(dim) *
                   sizeof(cplx);
    if (bytes > 1.0e9)
      throw guard_error("mean_square: inner grid too large to cache; coarsen the quadrature");

    std::vector<Matrix> ys(n2);
    parallel_for(exec, static_cast<std::int64_t>(n2), [&](std::int64_t j) {
      ys[j] = evolved_full(btilde, g2.t[j], ray_point(ray.v, ray.q, g2.t[j]));
    });

    std::vector<cplx> slots(n1 * n2);
    double l1 = 0.0;
    std::vector<double> l1_rows(n1, 0.0);
    parallel_for(exec, static_cast<std::int64_t>(n1), [&](std::int64_t i) {
      Matrix x = evolved_full(atilde, g1.t[i], ray_point(ray.v, ray.q, g1.t[i]));
      Matrix gxt = (s.rho * x).transpose();
      for (std::size_t j = 0; j < n2; ++j) {
        cplx val = gxt.cwiseProduct(ys[j]).sum();
        slots[static_cast<std::size_t>(i) * n2 + j] = g1.w[i] * g2.w[j] * val;
        l1_rows[i] += std::abs(g1.w[i]) * std::abs(g2.w[j]) * std::abs(val);
      }
    });
    for (double v : l1_rows) l1 += v;
    cplx total = reduce_pairwise(std::move(slots), cplx{});
    return std::pair<cplx, double>(total / (T * Tprime), l1 / (T * Tprime));
  };

  auto [vp, l1p] = value_at(0);
  auto [vq, l1q] = value_at(low_order(quad));
  (void)l1q;
  ScalarWithError r;
  r.value = vp;
  r.quad_error = std::abs(vp - vq) + error_floor(l1p);
  return r;
}

cplx multi_ray_average(const State& s, const EvolutionEngine& eng,
                       const std::vector<LocalOperator>& as, const std::vector<LocalOperator>& bs,
                       const RaySpec& ray, const std::vector<double>& horizons,
                       const QuadratureSpec& quad, Exec exec) {
  if (as.size() != bs.size() + 1)
    throw std::invalid_argument("multi_ray_average: need one more A factor than B factors");
  if (horizons.size() != bs.size())
    throw std::invalid_argument("multi_ray_average: one horizon per B factor");
  for (const auto& op : as) check_compat(s, eng, op, "multi_ray_average");
  for (const auto& op : bs) check_compat(s, eng, op, "multi_ray_average");
  ray.validate(eng.volume.dim());

  LocalOperator p = as[0];
  for (std::size_t j = 0; j < bs.size(); ++j) {
    LocalOperator wbar = ray_average_operator(eng, bs[j], ray, horizons[j], quad, exec);
    p = compose(compose(p, wbar), as[j + 1]);
  }
  return expect(s, p);
}

std::vector<SpacelikeRow> spacelike_probe(const State& s, const EvolutionEngine& eng,
                                          const LocalOperator& a, const LocalOperator& b,
                                          const Site& n, double v, int m_max,
                                          const std::optional<std::pair<std::vector<double>, double>>& kf,
                                          Exec exec) {
  check_compat(s, eng, a, "spacelike_probe");
  check_compat(s, eng, b, "spacelike_probe");
  if (static_cast<int>(n.size()) != eng.volume.dim())
    throw std::invalid_argument("spacelike_probe: step dimension does not match the lattice");
  if (l1_norm(n) == 0) throw std::invalid_argument("spacelike_probe: step must be nonzero");
  if (m_max < 1) throw std::invalid_argument("spacelike_probe: need at least one partial mean");
  if (!(v > 0))
    throw std::invalid_argument("spacelike_probe: velocity must be positive (or infinite)");
  if (kf && static_cast<int>(kf->first.size()) != eng.volume.dim())
    throw std::invalid_argument("spacelike_probe: wavevector dimension does not match the lattice");

  // The sequence must stay space-like on the torus: wrapping the accumulated
  // shift past half the extent would bring the supports back together.
  if (eng.volume.boundary == Boundary::periodic) {
    for (int d = 0; d < eng.volume.dim(); ++d) {
      long long reach = std::abs(static_cast<long long>(m_max - 1) * n[d]);
      if (2 * reach > eng.volume.extent[d])
        throw guard_error("spacelike_probe: accumulated shift exceeds half the torus extent");
    }
  }

  double tstep = std::isinf(v) ? 0.0 : static_cast<double>(l1_norm(n)) / v;
  ScalarKernel kern = ScalarKernel::build(s, eng, a, b);
  std::vector<cplx> c(m_max);
  parallel_for(exec, m_max, [&](std::int64_t m) {
    Matrix mm = kern.prepare(scale_site(n, static_cast<int>(m)));
    c[m] = kern.eval(mm, static_cast<double>(m) * tstep);
  });

  cplx ref = expect(s, a) * expect(s, b);
  double phi = 0.0;
  if (kf) {
    for (int d = 0; d < eng.volume.dim(); ++d) phi += kf->first[d] * n[d];
    phi -= kf->second * tstep;
  }

  std::vector<SpacelikeRow> rows(m_max);
  cplx run{}, run_conn{}, run_ph{}, run_ph_conn{};
  for (int m = 0; m < m_max; ++m) {
    cplx ph = kf ? std::polar(1.0, -phi * m) : cplx(1, 0);
    run += c[m];
    run_conn += c[m] - ref;
    run_ph += ph * c[m];
    run_ph_conn += ph * (c[m] - ref);
    double inv = 1.0 / (m + 1);
    rows[m] = {m + 1, run * inv, run_conn * inv, run_ph * inv, run_ph_conn * inv};
  }
  return rows;
}

}  // namespace lrergo
