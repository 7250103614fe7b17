#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <sstream>

#include "lrergo/model.hpp"
#include "lrergo/pauli_string.hpp"
#include "lrergo/ray_average.hpp"
#include "lrergo/structure_factor.hpp"
#include "lrergo/sweep.hpp"
#include "test_helpers.hpp"

using namespace lrergo;
using lrergo::testing::random_hermitian_op;

namespace {

LocalOperator op(const std::string& s) { return PauliString::parse(s).to_operator(); }

EvolutionEngine single_site_z() {
  Torus t{{1}, Boundary::open};
  return build_engine(op("Z@(0)"), t);
}

EvolutionEngine frozen_chain(int L) {
  Torus t{{L}, Boundary::periodic};
  return build_engine(LocalOperator::zero(t.all_sites(), 2), t);
}

EvolutionEngine tfi_engine(int L, double J, double hx, Boundary b = Boundary::periodic) {
  Torus t{{L}, b};
  Interaction phi = build_preset({PresetKind::transverse_ising, J, hx, 0.0}, t, std::log(2.0));
  return build_engine(hamiltonian(phi, t), t);
}

RaySpec still_ray() { return RaySpec{RationalDirection::of({1}), 0.0, {}, {}}; }

}  // namespace

// tau_t(X) = cos(2t) X - sin(2t) Y under H = Z, so the tracial average of
// omega(tau_t(X) X) over [0,T] is sin(2T)/(2T).
TEST_CASE("time average of cos(2t) correlator matches the sinc closed form") {
  EvolutionEngine eng = single_site_z();
  State s = tracial_state(eng);
  QuadratureSpec quad;
  LocalOperator x = op("X@(0)");

  AverageResult zero = ray_average(s, eng, x, x, still_ray(), M_PI, quad);
  CHECK(std::abs(zero.value) < 1e-10);
  CHECK(zero.quad_error < 1e-8);

  AverageResult partial = ray_average(s, eng, x, x, still_ray(), M_PI / 8.0, quad);
  CHECK(partial.value.real() == doctest::Approx(0.9003163161571061).epsilon(1e-12));
  CHECK(std::abs(partial.value.imag()) < 1e-12);
  CHECK(std::abs(partial.value.real() - 0.9003163161571061) <= partial.quad_error + 1e-13);
}

// With H = 0 and v = 1 the integrand is the indicator of even translation
// index, so breakpoint splitting must integrate it exactly.
TEST_CASE("moving ray over a frozen chain: piecewise-constant integrand is exact") {
  EvolutionEngine eng = frozen_chain(2);
  State s = tracial_state(eng);
  QuadratureSpec quad;
  LocalOperator z = op("Z@(0)");
  RaySpec ray{RationalDirection::of({1}), 1.0, {}, {}};

  AverageResult half = ray_average(s, eng, z, z, ray, 2.0, quad);
  CHECK(half.value.real() == doctest::Approx(0.5).epsilon(1e-12));
  AverageResult two_thirds = ray_average(s, eng, z, z, ray, 3.0, quad);
  CHECK(two_thirds.value.real() == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("uniform scheme straddling a jump stays inside its own error bar") {
  EvolutionEngine eng = frozen_chain(2);
  State s = tracial_state(eng);
  LocalOperator z = op("Z@(0)");
  RaySpec ray{RationalDirection::of({1}), 1.0, {}, {}};

  QuadratureSpec quad;
  quad.scheme = QuadratureSpec::Scheme::uniform;
  quad.dt = 0.22;  // 12 panels over [0, 2.5]; the jumps at t = 1, 2 sit inside panels
  AverageResult r = ray_average(s, eng, z, z, ray, 2.5, quad);
  CHECK(std::abs(r.value.real() - 0.6) <= r.quad_error);
  CHECK(r.quad_error < 0.2);
}

TEST_CASE("oscillatory average of a constant has the closed form (e^{i theta T}-1)/(i theta T)") {
  EvolutionEngine eng = single_site_z();
  State s = tracial_state(eng);
  QuadratureSpec quad;
  LocalOperator id = LocalOperator::identity(Region({{0}}), 2);
  RaySpec ray{RationalDirection::of({1}), 0.0, std::vector<double>{0.0}, -M_PI};
  CHECK(ray.phase_rate() == doctest::Approx(M_PI).epsilon(1e-15));

  OscillatoryResult full_turn = oscillatory_ray_average(s, eng, id, id, ray, 2.0, quad);
  CHECK(std::abs(full_turn.unsubtracted) < 1e-10);
  CHECK(std::abs(full_turn.connected.value) < 1e-12);  // integrand identically zero

  OscillatoryResult half_turn = oscillatory_ray_average(s, eng, id, id, ray, 1.0, quad);
  cplx expected = (std::polar(1.0, M_PI) - 1.0) / (cplx(0, 1) * M_PI);
  CHECK(std::abs(half_turn.unsubtracted - expected) < 1e-10);
}

TEST_CASE("unmodulated oscillatory average reduces to the connected plain average") {
  EvolutionEngine eng = tfi_engine(3, 1.0, 0.8);
  State s = gibbs_state(eng, 0.6);
  QuadratureSpec quad;
  LocalOperator a = op("X@(0)"), b = op("Z@(1)");
  RaySpec ray = still_ray();

  AverageResult plain = ray_average(s, eng, a, b, ray, 3.0, quad);
  OscillatoryResult osc = oscillatory_ray_average(s, eng, a, b, ray, 3.0, quad);
  cplx disc = expect(s, a) * expect(s, b);
  CHECK(std::abs(osc.unsubtracted - plain.value) < 1e-12);
  CHECK(std::abs(osc.connected.value - (plain.value - disc)) < 1e-12);
}

TEST_CASE("operator-average route agrees with the scalar eigenbasis route") {
  Rng rng(41);
  QuadratureSpec quad;
  for (int trial = 0; trial < 10; ++trial) {
    double J = 0.5 + rng.uniform();
    double hx = rng.uniform();
    EvolutionEngine eng = tfi_engine(2, J, hx);
    State s = gibbs_state(eng, 0.7);
    LocalOperator a = random_hermitian_op(rng, Region({{0}}), 2);
    LocalOperator b = random_hermitian_op(rng, Region({{1}}), 2);
    double v = (trial % 3 == 0) ? 0.0 : (trial % 3 == 1 ? 1.0 : -1.0);
    RaySpec ray{RationalDirection::of({1}), v, {}, {}};
    double T = 1.0 + rng.uniform();

    AverageResult scalar = ray_average(s, eng, a, b, ray, T, quad);
    LocalOperator wbar = ray_average_operator(eng, a, ray, T, quad);
    cplx via_op = expect(s, compose(wbar, b));
    CHECK(std::abs(scalar.value - via_op) < 1e-9);
  }
}

TEST_CASE("modulated operator average matches the oscillatory scalar route") {
  Rng rng(42);
  QuadratureSpec quad;
  EvolutionEngine eng = tfi_engine(2, 1.0, 0.4);
  State s = gibbs_state(eng, 0.5);
  for (int trial = 0; trial < 5; ++trial) {
    LocalOperator a = random_hermitian_op(rng, Region({{0}}), 2);
    LocalOperator b = random_hermitian_op(rng, Region({{1}}), 2);
    RaySpec ray{RationalDirection::of({1}), 1.0, std::vector<double>{0.3 + rng.uniform()},
                0.2 * rng.uniform()};
    double T = 1.0 + rng.uniform();

    OscillatoryResult osc = oscillatory_ray_average(s, eng, a, b, ray, T, quad);
    LocalOperator wbar = ray_average_operator(eng, a, ray, T, quad);
    CHECK(std::abs(osc.unsubtracted - expect(s, compose(wbar, b))) < 1e-9);
  }
}

TEST_CASE("second moment equals the double scalar quadrature") {
  Rng rng(43);
  QuadratureSpec quad;
  for (int trial = 0; trial < 5; ++trial) {
    EvolutionEngine eng = tfi_engine(3, 1.0, 0.3 + rng.uniform());
    State s = gibbs_state(eng, 0.4);
    LocalOperator a = random_hermitian_op(rng, Region({{0}}), 2);
    RaySpec ray{RationalDirection::of({1}), trial % 2 ? 1.0 : 0.0, {}, {}};
    double T = 1.0 + rng.uniform();

    ScalarWithError m2 = moment(s, eng, a, ray, T, 2, quad);
    ScalarWithError ms = mean_square(s, eng, a, a, ray, T, T, quad);
    CHECK(std::abs(m2.value - ms.value) < 1e-9);
  }
}

TEST_CASE("first moment equals the plain average against the identity") {
  EvolutionEngine eng = tfi_engine(3, 1.0, 0.9);
  State s = gibbs_state(eng, 1.1);
  QuadratureSpec quad;
  LocalOperator a = op("X@(0)");
  LocalOperator id = LocalOperator::identity(Region({{0}}), 2);
  RaySpec ray{RationalDirection::of({1}), 1.0, {}, {}};

  ScalarWithError m1 = moment(s, eng, a, ray, 2.0, 1, quad);
  AverageResult avg = ray_average(s, eng, a, id, ray, 2.0, quad);
  CHECK(std::abs(m1.value - avg.value) < 1e-10);
}

TEST_CASE("mean square of A against its adjoint is a nonnegative real") {
  EvolutionEngine eng = tfi_engine(3, 1.0, 0.7);
  State s = gibbs_state(eng, 0.9);
  QuadratureSpec quad;
  Rng rng(44);
  LocalOperator a = lrergo::testing::random_op(rng, Region({{0}, {1}}), 2);
  RaySpec ray{RationalDirection::of({1}), 1.0, {}, {}};

  ScalarWithError ms = mean_square(s, eng, a, adjoint(a), ray, 1.5, 1.5, quad);
  CHECK(std::abs(ms.value.imag()) < 1e-10);
  CHECK(ms.value.real() > -1e-10);

  LocalOperator wbar = ray_average_operator(eng, a, ray, 1.5, quad);
  CHECK(std::abs(ms.value - expect(s, compose(wbar, adjoint(wbar)))) < 1e-9);
}

TEST_CASE("identity B factors collapse the multi-point average to a product") {
  EvolutionEngine eng = tfi_engine(3, 1.0, 0.6);
  State s = gibbs_state(eng, 0.8);
  QuadratureSpec quad;
  LocalOperator a1 = op("X@(0)"), a2 = op("Z@(1)");
  LocalOperator id = LocalOperator::identity(Region({{0}}), 2);
  RaySpec ray = still_ray();

  cplx got = multi_ray_average(s, eng, {a1, a2}, {id}, ray, {2.5}, quad);
  CHECK(std::abs(got - expect(s, compose(a1, a2))) < 1e-12);
}

TEST_CASE("multi-point average validates the factor counts") {
  EvolutionEngine eng = tfi_engine(2, 1.0, 0.5);
  State s = tracial_state(eng);
  QuadratureSpec quad;
  LocalOperator a = op("X@(0)");
  CHECK_THROWS_AS(multi_ray_average(s, eng, {a}, {a}, still_ray(), {1.0}, quad),
                  std::invalid_argument);
  CHECK_THROWS_AS(multi_ray_average(s, eng, {a, a}, {a}, still_ray(), {}, quad),
                  std::invalid_argument);
}

TEST_CASE("averages of constants are exact and the norm bound holds") {
  EvolutionEngine eng = tfi_engine(3, 1.0, 1.0);
  State s = gibbs_state(eng, 0.5);
  QuadratureSpec quad;
  LocalOperator b = op("Z@(1)");
  LocalOperator c = scale(cplx(0.7, -0.2), LocalOperator::identity(Region({{0}}), 2));
  RaySpec ray{RationalDirection::of({1}), 1.0, {}, {}};

  AverageResult r = ray_average(s, eng, c, b, ray, 2.0, quad);
  CHECK(std::abs(r.value - cplx(0.7, -0.2) * expect(s, b)) < 1e-12);

  Rng rng(45);
  for (int trial = 0; trial < 5; ++trial) {
    LocalOperator a = lrergo::testing::random_op(rng, Region({{0}}), 2);
    LocalOperator bb = lrergo::testing::random_op(rng, Region({{1}}), 2);
    AverageResult rr = ray_average(s, eng, a, bb, ray, 1.0 + rng.uniform(), quad);
    CHECK(std::abs(rr.value) <= operator_norm(a) * operator_norm(bb) + 1e-9);
  }
}

TEST_CASE("doubling the order moves the value by less than the reported error") {
  Rng rng(46);
  for (int trial = 0; trial < 4; ++trial) {
    EvolutionEngine eng = tfi_engine(3, 0.5 + rng.uniform(), rng.uniform());
    State s = gibbs_state(eng, 0.3 + rng.uniform());
    LocalOperator a = random_hermitian_op(rng, Region({{0}}), 2);
    LocalOperator b = random_hermitian_op(rng, Region({{1}}), 2);
    RaySpec ray{RationalDirection::of({1}), trial % 2 ? 1.0 : 0.0, {}, {}};
    double T = 1.5 + rng.uniform();

    QuadratureSpec coarse;
    coarse.per_piece_order = 6;
    QuadratureSpec fine;
    fine.per_piece_order = 12;
    AverageResult rc = ray_average(s, eng, a, b, ray, T, coarse);
    AverageResult rf = ray_average(s, eng, a, b, ray, T, fine);
    CHECK(std::abs(rf.value - rc.value) <= rc.quad_error + 1e-15);

    ScalarWithError mc = moment(s, eng, a, ray, T, 2, coarse);
    ScalarWithError mf = moment(s, eng, a, ray, T, 2, fine);
    CHECK(std::abs(mf.value - mc.value) <= mc.quad_error + 1e-15);
  }
}

TEST_CASE("modulation flags must come as a pair") {
  EvolutionEngine eng = tfi_engine(2, 1.0, 0.5);
  State s = tracial_state(eng);
  QuadratureSpec quad;
  LocalOperator a = op("X@(0)");
  RaySpec bad{RationalDirection::of({1}), 0.0, std::vector<double>{1.0}, {}};
  CHECK_THROWS_AS(ray_average(s, eng, a, a, bad, 1.0, quad), std::invalid_argument);
}

TEST_CASE("spacelike probe on a frozen chain resolves the site overlap pattern") {
  EvolutionEngine eng = frozen_chain(6);
  State s = tracial_state(eng);
  LocalOperator a = op("Z@(0)"), b = op("Z@(1)");
  double inf = std::numeric_limits<double>::infinity();

  auto rows = spacelike_probe(s, eng, a, b, {1}, inf, 4, {});
  REQUIRE(rows.size() == 4);
  // c_m = omega(Z_m Z_1) = [m == 1]
  CHECK(std::abs(rows[0].mean) < 1e-12);
  CHECK(rows[1].mean.real() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(rows[3].mean.real() == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(std::abs(rows[1].mean_connected - rows[1].mean) < 1e-12);  // tracial: disc = 0

  auto phased = spacelike_probe(s, eng, a, b, {1}, inf, 4,
                                std::make_pair(std::vector<double>{M_PI}, 0.0));
  // phase e^{-i pi m} flips the sign of the m = 1 contribution
  CHECK(phased[1].phased.real() == doctest::Approx(-0.5).epsilon(1e-12));

  CHECK_THROWS_AS(spacelike_probe(s, eng, a, b, {1}, inf, 5, {}), guard_error);
  CHECK_THROWS_AS(spacelike_probe(s, eng, a, b, {0}, inf, 3, {}), std::invalid_argument);
  CHECK_THROWS_AS(spacelike_probe(s, eng, a, b, {1}, 0.0, 3, {}), std::invalid_argument);
}

TEST_CASE("spacelike probe with finite velocity matches direct correlators") {
  EvolutionEngine eng = tfi_engine(6, 1.0, 0.8);
  State s = gibbs_state(eng, 0.5);
  LocalOperator a = op("Z@(0)"), b = op("Z@(0)");

  auto rows = spacelike_probe(s, eng, a, b, {1}, 2.0, 3, {});
  cplx direct{};
  for (int m = 0; m < 3; ++m)
    direct += expect(s, compose(translate_op(evolve(eng, a, 0.5 * m), {m}, eng.volume), b));
  CHECK(std::abs(rows[2].mean - direct / 3.0) < 1e-10);
}

TEST_CASE("tracial structure factor at k = 0, t = 0 counts the on-site overlap") {
  EvolutionEngine eng = tfi_engine(4, 1.0, 1.0);
  State s = tracial_state(eng);
  cplx sf = structure_factor(s, eng, op("Z@(0)"), op("Z@(0)"), {0.0}, 0.0);
  CHECK(sf.real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(sf.imag()) < 1e-12);
}

TEST_CASE("structure factor conjugation symmetry on an invariant state") {
  EvolutionEngine eng = tfi_engine(3, 1.0, 0.7);
  State s = gibbs_state(eng, 0.8);
  LocalOperator a = op("Z@(0)");
  double k = 2.0 * M_PI / 3.0;
  cplx plus = structure_factor(s, eng, a, a, {k}, 0.7);
  cplx minus = structure_factor(s, eng, a, a, {k}, -0.7);
  CHECK(std::abs(std::conj(plus) - minus) < 1e-10);
}

TEST_CASE("structure factor refuses an open box") {
  Torus t{{3}, Boundary::open};
  Interaction phi = build_preset({PresetKind::transverse_ising, 1.0, 1.0, 0.0}, t, std::log(2.0));
  EvolutionEngine eng = build_engine(hamiltonian(phi, t), t);
  State s = tracial_state(eng);
  CHECK_THROWS_AS(structure_factor(s, eng, op("Z@(0)"), op("Z@(0)"), {0.0}, 0.0), guard_error);
}

TEST_CASE("euler-scale average of a time-constant structure factor is that constant") {
  EvolutionEngine eng = frozen_chain(4);
  State s = tracial_state(eng);
  LocalOperator a = op("Z@(0)");
  cplx flat = structure_factor(s, eng, a, a, {0.0}, 0.0);
  EulerScaleResult r = euler_scale_average(s, eng, a, a, {0.0}, 4.0);
  CHECK(std::abs(r.value - flat) < 1e-10);
  CHECK(r.t_min == doctest::Approx(1.0));
}

TEST_CASE("euler-scale average agrees with a dense fixed-grid integration") {
  EvolutionEngine eng = tfi_engine(3, 1.0, 0.9);
  State s = gibbs_state(eng, 0.6);
  LocalOperator a = op("Z@(0)");
  std::vector<double> kappa{1.3};
  double t_min = 1.0, T = 3.0;

  EulerScaleResult r = euler_scale_average(s, eng, a, a, kappa, T, t_min);

  // Composite Simpson reference on 64 sub-intervals.
  int n = 64;
  double h = (T - t_min) / n;
  cplx acc{};
  for (int i = 0; i <= n; ++i) {
    double t = t_min + i * h;
    cplx f = structure_factor(s, eng, a, a, {kappa[0] / t}, t);
    double wgt = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    acc += wgt * f;
  }
  acc *= h / 3.0;
  CHECK(std::abs(r.value - acc / (T - t_min)) < 1e-6);

  CHECK_THROWS_AS(euler_scale_average(s, eng, a, a, kappa, 1.0, 2.0), std::invalid_argument);
}

TEST_CASE("sweep cells carry the mode-specific reference and bookkeeping") {
  EvolutionEngine eng = tfi_engine(3, 1.0, 0.8);
  State s = gibbs_state(eng, 0.6);
  QuadratureSpec quad;
  LocalOperator a = op("X@(0)"), b = op("Z@(1)");
  RaySpec base{RationalDirection::of({1}), 0.0, {}, {}};
  std::vector<double> vs{0.0, 1.0}, ts{1.0, 2.0};
  cplx ea = expect(s, a), eb = expect(s, b);

  auto plain = convergence_sweep(s, eng, a, b, base, vs, ts, SweepMode::plain, 1, quad);
  REQUIRE(plain.size() == 4);
  CHECK(plain[1].v == 0.0);
  CHECK(plain[1].T == 2.0);
  CHECK(plain[2].v == 1.0);
  CHECK(std::abs(plain[0].reference - ea * eb) < 1e-15);
  RaySpec r0{RationalDirection::of({1}), 0.0, {}, {}};
  AverageResult direct = ray_average(s, eng, a, b, r0, 1.0, quad);
  CHECK(std::abs(plain[0].value - direct.value) < 1e-15);
  CHECK(plain[0].abs_deviation ==
        doctest::Approx(std::abs(plain[0].value - plain[0].reference)).epsilon(1e-14));

  auto osc = convergence_sweep(s, eng, a, b, base, {0.0}, {1.5}, SweepMode::oscillatory, 1, quad);
  CHECK(std::abs(osc[0].reference) == 0.0);

  auto mom = convergence_sweep(s, eng, a, b, base, {0.0}, {1.5}, SweepMode::moment, 3, quad);
  CHECK(std::abs(mom[0].reference - std::pow(ea, 3)) < 1e-15);

  auto ms = convergence_sweep(s, eng, a, b, base, {0.0}, {1.5}, SweepMode::mean_square, 1, quad);
  CHECK(std::abs(ms[0].reference - ea * eb) < 1e-15);

  CHECK_THROWS_AS(convergence_sweep(s, eng, a, b, base, {}, ts, SweepMode::plain, 1, quad),
                  std::invalid_argument);
}

TEST_CASE("sweep csv has the fixed column layout") {
  EvolutionEngine eng = tfi_engine(2, 1.0, 0.5);
  State s = tracial_state(eng);
  QuadratureSpec quad;
  RaySpec base{RationalDirection::of({1}), 0.0, {}, {}};
  auto cells = convergence_sweep(s, eng, op("Z@(0)"), op("Z@(0)"), base, {0.0}, {1.0, 2.0},
                                 SweepMode::plain, 1, quad);
  std::ostringstream os;
  write_sweep_csv(os, cells);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line ==
        "mode,v,T,value_re,value_im,reference_re,reference_im,abs_deviation,quad_error,wall_ms");
  int rows = 0;
  while (std::getline(is, line)) {
    ++rows;
    int commas = 0;
    for (char c : line) commas += c == ',';
    CHECK(commas == 9);
    CHECK(line.rfind("plain,", 0) == 0);
  }
  CHECK(rows == 2);
}

TEST_CASE("longer horizons shrink the ergodic deviation on a tilted chain") {
  Torus t{{4}, Boundary::periodic};
  Interaction phi = build_preset({PresetKind::tilted_ising, 1.0, 1.05, 0.5}, t, std::log(2.0));
  EvolutionEngine eng = build_engine(hamiltonian(phi, t), t);
  State s = tracial_state(eng);
  QuadratureSpec quad;
  RaySpec base{RationalDirection::of({1}), 0.0, {}, {}};
  auto cells =
      convergence_sweep(s, eng, op("Z@(0)"), op("Z@(0)"), base, {0.0}, {2.0, 10.0},
                        SweepMode::plain, 1, quad);
  CHECK(cells[1].abs_deviation < cells[0].abs_deviation);
}

TEST_CASE("sweep mode names round-trip") {
  for (auto m : {SweepMode::plain, SweepMode::oscillatory, SweepMode::mean_square,
                 SweepMode::moment})
    CHECK(sweep_mode_from_name(sweep_mode_name(m)) == m);
  CHECK_THROWS_AS(sweep_mode_from_name("bogus"), config_error);
}
