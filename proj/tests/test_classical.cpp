#include <doctest.h>

#include <array>
#include <cmath>

#include "memosc/classical.hpp"
#include "memosc/oracle.hpp"

using namespace memosc;
using namespace memosc::classical;

namespace {

constexpr auto New = ModelKind::NonlocalNew;
constexpr auto CK = ModelKind::CaldirolaKanai;

double max_entry_diff(const EvolutionMatrix& a, const EvolutionMatrix& b) {
  return std::max({std::abs(a.xx - b.xx), std::abs(a.xp - b.xp), std::abs(a.px - b.px), std::abs(a.pp - b.pp)});
}

}  // namespace

TEST_CASE("mass at the memory time is m0") {
  OscillatorParams p;
  p.m0 = 1.7;
  p.t0 = 0.4;
  CHECK(mass_at(New, p, p.t0) == p.m0);
  CHECK(mass_at(CK, p, p.t0) == p.m0);
}

TEST_CASE("nonlocal mass law") {
  OscillatorParams p;
  CHECK(mass_at(New, p, 2.0) == doctest::Approx(2.381098).epsilon(1e-6));
  CHECK(mass_at(CK, p, 2.0) == doctest::Approx(std::exp(2.0)).epsilon(1e-14));
}

TEST_CASE("kappa") {
  OscillatorParams p;
  CHECK(kappa(New, p.t0, p) == 0.0);
  CHECK(std::abs(kappa(New, 20.0, p) - p.gamma) / p.gamma <= 1e-8);
  for (double t : {0.0, 0.3, 5.0}) CHECK(kappa(CK, t, p) == p.gamma);
}

TEST_CASE("kappa solves the Riccati equation") {
  OscillatorParams p;
  for (double t : {0.0, 0.1, 1.0, 3.0, 12.0}) {
    CHECK(verify_kappa_riccati(New, t, p) <= 1e-12);
    CHECK(verify_kappa_riccati(CK, t, p) <= 1e-12);
  }
}

TEST_CASE("minus gamma branch solves Riccati but is rejected") {
  OscillatorParams p;
  CHECK(riccati_residual(KappaBranch::MinusGamma, 1.0, p) <= 1e-12);
  CHECK_FALSE(satisfies_asymptotic_condition(KappaBranch::MinusGamma, p));
  CHECK(satisfies_asymptotic_condition(KappaBranch::Tanh, p));
  CHECK(satisfies_asymptotic_condition(KappaBranch::PlusGamma, p));
}

TEST_CASE("evolution matrix is the identity at t0") {
  OscillatorParams p;
  p.t0 = 0.7;
  CHECK(max_entry_diff(evolution_matrix(New, p.t0, p), EvolutionMatrix::identity()) <= 1e-15);
  CHECK(max_entry_diff(evolution_matrix(CK, p.t0, p), EvolutionMatrix::identity()) <= 1e-15);
}

TEST_CASE("undamped CK map is a rotation") {
  OscillatorParams p;
  p.gamma = 0.0;
  p.omega = 1.3;
  const double t = 0.9;
  const auto m = evolution_matrix(CK, t, p);
  const double c = std::cos(p.omega * t);
  const double s = std::sin(p.omega * t);
  CHECK(max_entry_diff(m, {c, s / (p.m0 * p.omega), -p.m0 * p.omega * s, c}) <= 1e-14);
}

TEST_CASE("maps are symplectic") {
  OscillatorParams p;
  for (double t : {0.1, 0.8, 2.0, 3.5}) {
    CHECK(std::abs(evolution_matrix(New, t, p).det() - 1.0) <= 1e-12);
    CHECK(std::abs(evolution_matrix(CK, t, p).det() - 1.0) <= 1e-12);
  }
}

TEST_CASE("printed momentum entry breaks the determinant") {
  OscillatorParams p;
  CHECK(std::abs(evolution_matrix_printed_pp(1.0, p).det() - 1.0) > 1e-6);
}

TEST_CASE("zero state stays at the origin") {
  OscillatorParams p;
  for (double t : {0.5, 2.0}) {
    const auto s = evolve_state(New, {0.0, 0.0}, t, p);
    CHECK(s.x == 0.0);
    CHECK(s.p == 0.0);
  }
}

TEST_CASE("evolve_state agrees with RK4") {
  OscillatorParams p;
  const double t = 1.0;
  const auto rhs = [&](double tt, const std::array<double, 2>& y) {
    return std::array<double, 2>{y[1], newton_rhs(New, tt, y, p)};
  };
  oracle::IntegratorSpec spec;
  spec.h = 1e-5;
  spec.richardson = false;
  const auto traj = oracle::rk4_integrate<2>(rhs, {1.0, 0.0}, p.t0, t, spec);
  const auto& y = traj.states.back();
  const auto s = evolve_state(New, {1.0, 0.0}, t, p);
  CHECK(std::abs(s.x - y[0]) <= 1e-8);
  CHECK(std::abs(s.p - mass_at(New, p, t) * y[1]) <= 1e-8);
}

TEST_CASE("pure damping maps") {
  OscillatorParams p;
  p.omega = 0.0;
  CHECK(max_entry_diff(pure_damping_matrix(New, p.t0, p), EvolutionMatrix::identity()) <= 1e-15);
  CHECK(pure_damping_matrix(New, 40.0, p).xp == doctest::Approx(1.0 / (p.m0 * p.gamma)).epsilon(1e-12));
  CHECK(pure_damping_matrix(CK, 40.0, p).xp == doctest::Approx(1.0 / (2.0 * p.m0 * p.gamma)).epsilon(1e-12));

  OscillatorParams free = p;
  free.gamma = 0.0;
  CHECK_THROWS_AS(pure_damping_matrix(New, 1.0, free), DomainError);
  CHECK(free_particle_matrix(2.0, free).xp == doctest::Approx(2.0));
}

TEST_CASE("asymptotic states") {
  OscillatorParams p;
  p.omega = 0.0;
  const auto s_new = asymptotic_state(New, {0.0, 1.0}, p);
  const auto s_ck = asymptotic_state(CK, {0.0, 1.0}, p);
  CHECK(s_new.x == doctest::Approx(2.0));
  CHECK(s_new.p == doctest::Approx(1.0));
  CHECK(s_ck.x == doctest::Approx(1.0));
  CHECK(s_ck.p == doctest::Approx(1.0));
  for (auto m : {New, CK}) {
    const auto s = asymptotic_state(m, {0.4, 0.0}, p);
    CHECK(s.x == 0.4);
    CHECK(s.p == 0.0);
  }
}

TEST_CASE("composition law") {
  OscillatorParams p;
  CHECK(composition_defect(CK, 0.0, 1.0, 2.0, p).norm <= 1e-10);
  CHECK(composition_defect(New, 0.0, 0.0, 2.0, p).norm == 0.0);

  const double d_new = composition_defect(New, 0.0, 1.0, 2.0, p).norm;
  CHECK(d_new > 0.01);
  CHECK(d_new == doctest::Approx(0.26354562244776747).epsilon(1e-9));
}

TEST_CASE("Newton right-hand side") {
  OscillatorParams p;
  CHECK(newton_rhs(New, 1.0, {0.0, 0.0}, p) == 0.0);
  CHECK(newton_rhs(New, p.t0, {1.0, 5.0}, p) == doctest::Approx(-p.omega * p.omega));

  const double late = 30.0;
  const double a_new = newton_rhs(New, late, {0.3, -0.8}, p);
  const double a_ck = newton_rhs(CK, late, {0.3, -0.8}, p);
  CHECK(std::abs(a_new - a_ck) / std::abs(a_ck) <= 1e-8);
}

TEST_CASE("nonlocal map tends to the rotation as gamma vanishes") {
  OscillatorParams p;
  p.gamma = 1e-6;
  OscillatorParams h = p;
  h.gamma = 0.0;
  for (double t : {0.3, 1.1, 2.5}) CHECK(max_entry_diff(evolution_matrix(New, t, p), evolution_matrix(CK, t, h)) <= 1e-8);
}

TEST_CASE("domain errors") {
  OscillatorParams p;
  CHECK_THROWS_AS(evolution_matrix(New, p.t0 - 1.0, p), DomainError);
  p.gamma = 2.0;
  CHECK_THROWS_AS(evolution_matrix(New, 1.0, p), DomainError);
}
