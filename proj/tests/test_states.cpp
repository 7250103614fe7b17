#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lrergo/model.hpp"
#include "lrergo/pauli_string.hpp"
#include "lrergo/states.hpp"
#include "test_helpers.hpp"

using namespace lrergo;
using lrergo::testing::random_op;
using lrergo::testing::random_hermitian_op;

namespace {
LocalOperator op(const std::string& s) { return PauliString::parse(s).to_operator(); }

EvolutionEngine ising_engine(int L, double J, double hx, Boundary b = Boundary::periodic) {
  Torus t{{L}, b};
  Interaction phi = build_preset({PresetKind::transverse_ising, J, hx, 0.0}, t, std::log(2.0));
  return build_engine(hamiltonian(phi, t), t);
}
}  // namespace

TEST_CASE("gibbs at beta = 0 is the tracial state") {
  EvolutionEngine eng = ising_engine(3, 1.0, 0.7);
  State g0 = gibbs_state(eng, 0.0);
  CHECK((g0.rho - Matrix::Identity(8, 8) / 8.0).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("single-site transverse field: magnetization tanh(beta h)") {
  Torus t{{1}, Boundary::open};
  EvolutionEngine eng = build_engine(op("-1.0 * X@(0)"), t);
  State g = gibbs_state(eng, 1.0);
  cplx m = expect(g, op("X@(0)"));
  CHECK(m.real() == doctest::Approx(std::tanh(1.0)).epsilon(1e-12));
  CHECK(m.real() == doctest::Approx(0.7615941559557649).epsilon(1e-12));
  CHECK(std::abs(m.imag()) < 1e-12);
}

TEST_CASE("two-site Ising bond correlator tanh(beta J)") {
  Torus t{{2}, Boundary::open};
  Interaction phi = build_preset({PresetKind::ising, 1.0, 0.0, 0.0}, t, std::log(2.0));
  EvolutionEngine eng = build_engine(hamiltonian(phi, t), t);
  for (double beta : {0.3, 1.0, 2.0}) {
    State g = gibbs_state(eng, beta);
    CHECK(expect(g, op("Z@(0) Z@(1)")).real() == doctest::Approx(std::tanh(beta)).epsilon(1e-12));
  }
}

TEST_CASE("large beta reaches the ground-space projector") {
  EvolutionEngine eng = ising_engine(3, 1.0, 0.0, Boundary::open);
  State g = gibbs_state(eng, 50.0);
  // Degenerate ground space: equal mixture over the lowest eigenvalue states.
  const double e0 = eng.evals.minCoeff();
  Matrix proj = Matrix::Zero(eng.dim(), eng.dim());
  int count = 0;
  for (Eigen::Index j = 0; j < eng.dim(); ++j)
    if (eng.evals(j) - e0 < 1e-9) {
      proj += eng.evecs.col(j) * eng.evecs.col(j).adjoint();
      ++count;
    }
  proj /= static_cast<double>(count);
  CHECK((g.rho - proj).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("state validation rejects malformed density matrices") {
  Torus t{{1}, Boundary::open};
  Matrix bad(2, 2);
  bad << 1.5, 0, 0, -0.5;  // negative eigenvalue, trace 1
  CHECK_THROWS_AS(State::make(bad, t, 2, std::nullopt, "x"), std::invalid_argument);
  Matrix tr2 = Matrix::Identity(2, 2);
  CHECK_THROWS_AS(State::make(tr2, t, 2, std::nullopt, "x"), std::invalid_argument);
  Matrix nh(2, 2);
  nh << 0.5, cplx(0, 0.3), 0, 0.5;
  CHECK_THROWS_AS(State::make(nh, t, 2, std::nullopt, "x"), std::invalid_argument);
}

TEST_CASE("expectations are bounded by the norm and real on self-adjoint operators") {
  EvolutionEngine eng = ising_engine(3, 1.0, 1.05);
  State g = gibbs_state(eng, 0.8);
  Rng rng(19);
  Region supp({{0}, {2}});
  for (int trial = 0; trial < 10; ++trial) {
    LocalOperator a = random_op(rng, supp, 2);
    CHECK(std::abs(expect(g, a)) <= operator_norm(a) + 1e-9);
    LocalOperator h = random_hermitian_op(rng, supp, 2);
    CHECK(std::abs(expect(g, h).imag()) < 1e-10);
  }
}

TEST_CASE("Cauchy-Schwarz for the state inner product") {
  EvolutionEngine eng = ising_engine(3, 1.0, 0.4);
  State g = gibbs_state(eng, 1.2);
  Rng rng(29);
  Region supp({{0}, {1}, {2}});
  for (int trial = 0; trial < 10; ++trial) {
    LocalOperator a = random_op(rng, supp, 2), b = random_op(rng, supp, 2);
    double lhs = std::norm(expect(g, compose(adjoint(a), b)));
    double rhs = expect(g, compose(adjoint(a), a)).real() * expect(g, compose(adjoint(b), b)).real();
    CHECK(lhs <= rhs + 1e-9);
  }
}

TEST_CASE("KMS residual vanishes for the Gibbs state") {
  EvolutionEngine eng = ising_engine(3, 1.0, 1.05);
  Rng rng(37);
  Region supp({{0}, {1}, {2}});
  for (double beta : {0.2, 1.0}) {
    State g = gibbs_state(eng, beta);
    for (int trial = 0; trial < 20; ++trial) {
      LocalOperator a = random_hermitian_op(rng, supp, 2);
      LocalOperator b = random_hermitian_op(rng, supp, 2);
      CHECK(kms_residual(g, eng, a, b, beta) < 1e-9);
    }
  }
}

TEST_CASE("KMS at beta = 0 reduces to tracial commutativity under the trace") {
  EvolutionEngine eng = ising_engine(2, 1.0, 0.3);
  State tr = tracial_state(eng);
  Rng rng(43);
  Region supp({{0}, {1}});
  for (int trial = 0; trial < 5; ++trial) {
    LocalOperator a = random_op(rng, supp, 2), b = random_op(rng, supp, 2);
    CHECK(kms_residual(tr, eng, a, b, 0.0) < 1e-12);
  }
}

TEST_CASE("product states") {
  Torus t{{3}, Boundary::periodic};
  Vector plus(2);
  plus << 1.0, 1.0;  // normalized internally
  State p = product_state(t, 2, {plus});
  for (int i = 0; i < 3; ++i) {
    CHECK(expect(p, op("X@(" + std::to_string(i) + ")")).real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(expect(p, op("Z@(" + std::to_string(i) + ")"))) < 1e-12);
  }
  Vector up(2), down(2);
  up << 1.0, 0.0;
  down << 0.0, 1.0;
  State q = product_state(t, 2, {up, down, up});
  CHECK(expect(q, op("Z@(0)")).real() == doctest::Approx(1.0));
  CHECK(expect(q, op("Z@(1)")).real() == doctest::Approx(-1.0));
  CHECK_THROWS_AS(product_state(t, 2, {up, down}), std::invalid_argument);
}

TEST_CASE("connected correlator basics") {
  EvolutionEngine eng = ising_engine(3, 1.0, 0.0);
  State tr = tracial_state(eng);
  // same site, t=0: omega(ZZ) - omega(Z)^2 = 1
  CHECK(connected_correlator(tr, eng, op("Z@(0)"), op("Z@(0)"), Site{0}, 0.0).real() ==
        doctest::Approx(1.0).epsilon(1e-12));
  // disjoint sites under the trace: exactly disconnected
  CHECK(std::abs(connected_correlator(tr, eng, op("Z@(0)"), op("Z@(1)"), Site{0}, 0.0)) < 1e-12);
  // translation moves A onto B's site
  CHECK(connected_correlator(tr, eng, op("Z@(0)"), op("Z@(1)"), Site{1}, 0.0).real() ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("invariance check: covariant Gibbs is flat, skewed product is not") {
  EvolutionEngine eng = ising_engine(4, 1.0, 0.9);
  State g = gibbs_state(eng, 0.7);
  std::vector<LocalOperator> obs{op("Z@(0)"), op("X@(1) Z@(2)")};
  std::vector<double> times{0.4, 1.1};
  std::vector<Site> shifts{{1}, {2}, {3}};
  InvarianceReport rep = invariance_check(g, eng, obs, times, shifts);
  CHECK(rep.max_time_deviation < 1e-9);
  CHECK(rep.max_space_deviation < 1e-9);

  Vector up(2), down(2);
  up << 1.0, 0.0;
  down << 0.0, 1.0;
  State skew = product_state(eng.volume, 2, {up, down, up, up});
  InvarianceReport rep2 = invariance_check(skew, eng, {op("Z@(0)")}, {}, shifts);
  CHECK(rep2.max_space_deviation > 1.0);
}
