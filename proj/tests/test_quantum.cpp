#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "memosc/classical.hpp"
#include "memosc/quantum.hpp"

using namespace memosc;
using namespace memosc::quantum;

namespace {

double coeff_diff(const QuadraticKernel& u, const QuadraticKernel& v) {
  return std::max({std::abs(u.a - v.a), std::abs(u.b - v.b), std::abs(u.c - v.c)});
}

double rel_coeff_diff(const QuadraticKernel& u, const QuadraticKernel& v) {
  const double scale = std::max({std::abs(v.a), std::abs(v.b), std::abs(v.c)});
  return coeff_diff(u, v) / scale;
}

OscillatorParams pure_damping() {
  OscillatorParams p;
  p.omega = 0.0;
  return p;
}

}  // namespace

TEST_CASE("undamped nonlocal kernel is the harmonic propagator") {
  OscillatorParams p;
  p.gamma = 0.0;
  const double tau = 0.8;
  const auto k = kernel(KernelVariant::New, tau, p);
  const double cot = 1.0 / std::tan(tau);
  CHECK(std::abs(k.a - cot) <= 1e-14);
  CHECK(std::abs(k.c - cot) <= 1e-14);
  CHECK(std::abs(k.b + 1.0 / std::sin(tau)) <= 1e-14);
  CHECK(std::abs(k.norm - harmonic_kernel(tau, p).norm) <= 1e-14);
}

TEST_CASE("free limit of the pure damping kernel") {
  auto p = pure_damping();
  p.gamma = 1e-7;
  const double tau = 1.3;
  const auto k = kernel(KernelVariant::PureDamping, tau, p);
  const auto f = free_kernel(tau, p);
  CHECK(std::abs(f.a - 1.0 / tau) <= 1e-15);
  CHECK(std::abs(f.b + 1.0 / tau) <= 1e-15);
  CHECK(rel_coeff_diff(k, f) <= 1e-8);
  CHECK(std::abs(k.norm - f.norm) <= 1e-8);
}

TEST_CASE("nonlocal kernel tends to the harmonic kernel") {
  OscillatorParams p;
  p.gamma = 1e-6;
  for (double tau : {0.3, 1.0, 2.0}) {
    const auto k = kernel(KernelVariant::New, tau, p);
    const auto h = harmonic_kernel(tau, p);
    CHECK(coeff_diff(k, h) <= 1e-8);
    CHECK(std::abs(k.norm - h.norm) <= 1e-8);
  }
}

TEST_CASE("kernel domain errors") {
  OscillatorParams p;
  CHECK_THROWS_AS(kernel(KernelVariant::New, 0.0, p), DomainError);
  CHECK_THROWS_AS(kernel(KernelVariant::New, 10.0, p), DomainError);  // past the first focal time
  CHECK_THROWS_AS(kernel(KernelVariant::PureDamping, 1.0, [] {
                    OscillatorParams q;
                    q.gamma = 0.0;
                    q.omega = 0.0;
                    return q;
                  }()),
                  DomainError);
}

TEST_CASE("B factor phase") {
  OscillatorParams p;
  CHECK(b_factor_phase(1.0, [] {
          OscillatorParams q;
          q.gamma = 0.0;
          return q;
        }()) == 0.0);
  CHECK(std::abs(b_factor_phase(1e-9, p)) <= 1e-12);

  const double beta = b_factor_phase(1.0, p);
  CHECK(std::abs(beta) > 1e-3);
  const auto k_new = kernel(KernelVariant::New, 1.0, p);
  const auto k_koch = kernel(KernelVariant::Kochan, 1.0, p);
  CHECK(std::abs((k_new.a - k_koch.a).real() - beta) <= 1e-14);
  CHECK(k_new.b == k_koch.b);
  CHECK(k_new.c == k_koch.c);
}

TEST_CASE("apply_kernel near the memory time returns the packet") {
  OscillatorParams p;
  const auto psi0 = GaussianPacket::normalized(0.3, 0.7, 1.2);
  for (auto v : {KernelVariant::New, KernelVariant::CaldirolaKanai}) {
    const auto psi = apply_kernel(kernel(v, 1e-6, p), psi0);
    CHECK(std::abs(psi.width - psi0.width) <= 1e-4);
    CHECK(std::abs(psi.center - psi0.center) <= 1e-4);
    CHECK(std::abs(psi.momentum - psi0.momentum) <= 1e-4);
    for (double x : {-1.0, 0.0, 0.5, 2.0}) CHECK(std::abs(psi.density(x) - psi0.density(x)) <= 1e-4);
  }
}

TEST_CASE("exact kernels are unitary") {
  OscillatorParams p;
  const auto psi0 = GaussianPacket::normalized(0.5, -0.4, 0.8);
  REQUIRE(psi0.norm_squared() == doctest::Approx(1.0).epsilon(1e-14));
  for (auto v : {KernelVariant::New, KernelVariant::Kochan, KernelVariant::CaldirolaKanai})
    for (double tau : {0.2, 1.0, 2.5}) CHECK(std::abs(apply_kernel(kernel(v, tau, p), psi0).norm_squared() - 1.0) <= 1e-10);
  const auto pd = pure_damping();
  CHECK(std::abs(apply_kernel(kernel(KernelVariant::PureDamping, 3.0, pd), psi0).norm_squared() - 1.0) <= 1e-10);
}

TEST_CASE("New and Kochan give the same density") {
  OscillatorParams p;
  const auto psi0 = GaussianPacket::normalized(1.0, 0.5, 1.0);
  const auto a = apply_kernel(kernel(KernelVariant::New, 1.3, p), psi0);
  const auto b = apply_kernel(kernel(KernelVariant::Kochan, 1.3, p), psi0);
  for (double x = -4.0; x <= 4.0; x += 0.25) CHECK(std::abs(a.density(x) - b.density(x)) <= 1e-12);
}

TEST_CASE("pure damping center") {
  const auto p = pure_damping();
  const auto psi0 = GaussianPacket::normalized(0.0, 1.0, 1.0);
  const double expected = std::tanh(1.0) / 0.5;
  CHECK(expected == doctest::Approx(1.5232).epsilon(1e-4));
  CHECK(pure_damping_center(ModelKind::NonlocalNew, psi0, 2.0, p) == doctest::Approx(expected).epsilon(1e-14));
  const auto psi = apply_kernel(kernel(KernelVariant::PureDamping, 2.0, p), psi0);
  CHECK(std::abs(psi.center - expected) <= 1e-10);
}

TEST_CASE("closed-form density") {
  const auto p = pure_damping();
  const auto psi0 = GaussianPacket::normalized(0.0, 1.0, 1.0);
  std::vector<double> xs;
  for (double x = -6.0; x <= 8.0; x += 0.5) xs.push_back(x);
  const std::vector<double> times{0.0, 0.5, 2.0};
  const auto prof = density_closed_form(psi0, times, xs, p);
  CHECK(prof.center[0] == 0.0);
  CHECK(prof.dispersion[0] == doctest::Approx(1.0));
  for (std::size_t i = 1; i < times.size(); ++i) {
    const auto psi = apply_kernel(kernel(KernelVariant::PureDamping, times[i], p), psi0);
    for (std::size_t j = 0; j < xs.size(); ++j) CHECK(std::abs(prof.rho(i, j) - psi.density(xs[j])) <= 1e-10);
  }
}

TEST_CASE("closed-form density requires pure damping") {
  OscillatorParams p;
  const auto psi0 = GaussianPacket::normalized(0.0, 1.0, 1.0);
  const std::vector<double> times{1.0}, xs{0.0};
  CHECK_THROWS_AS(density_closed_form(psi0, times, xs, p), DomainError);
}

TEST_CASE("asymptotic density") {
  const auto p = pure_damping();
  const auto psi0 = GaussianPacket::normalized(0.0, 1.0, 1.0);
  std::vector<double> xs;
  for (double x = -6.0; x <= 10.0; x += 0.5) xs.push_back(x);
  const auto a_new = asymptotic_density(psi0, ModelKind::NonlocalNew, xs, p);
  const auto a_ck = asymptotic_density(psi0, ModelKind::CaldirolaKanai, xs, p);
  CHECK(a_new.center[0] == doctest::Approx(2.0));
  CHECK(a_ck.center[0] == doctest::Approx(1.0));
  // The printed law assigns both models the same late width; the kernels do not.
  CHECK(a_new.dispersion[0] == doctest::Approx(17.0));
  CHECK(a_ck.dispersion[0] == doctest::Approx(5.0));
  for (auto m : {ModelKind::NonlocalNew, ModelKind::CaldirolaKanai})
    CHECK(asymptotic_dispersion(m, 1.0, p, DispersionFormula::Printed) == doctest::Approx(5.0));

  const std::vector<double> late{20.0 / p.gamma};
  const auto prof = density_closed_form(psi0, late, xs, p);
  for (std::size_t j = 0; j < xs.size(); ++j) CHECK(std::abs(prof.rho(0, j) - a_new.rho(0, j)) <= 1e-8);

  const auto still = GaussianPacket::normalized(0.4, 0.0, 1.0);
  CHECK(asymptotic_center(ModelKind::NonlocalNew, still, p) == 0.4);
  CHECK(asymptotic_center(ModelKind::CaldirolaKanai, still, p) == 0.4);

  auto free = p;
  free.gamma = 0.0;
  CHECK_THROWS_AS(asymptotic_density(psi0, ModelKind::NonlocalNew, xs, free), DomainError);
}

TEST_CASE("mean position obeys the nonlocal equation") {
  OscillatorParams p;
  const auto centered = GaussianPacket::normalized(0.0, 0.0, 1.0);
  CHECK(mean_position_residual(centered, 1.0, p) == 0.0);

  const auto psi0 = GaussianPacket::normalized(1.0, 0.0, 1.0);
  for (double tau = 0.1; tau <= 2.0; tau += 0.3) {
    const double r_new = mean_position_residual(psi0, tau, p);
    const double r_koch = mean_position_residual(psi0, tau, p, 1e-3, KernelVariant::Kochan);
    CHECK(r_new <= 1e-5);
    CHECK(std::abs(r_new - r_koch) <= 1e-12);
  }
}

TEST_CASE("Ehrenfest consistency") {
  OscillatorParams p;
  const auto psi0 = GaussianPacket::normalized(1.0, 0.6, 1.0);
  for (double tau : {0.2, 1.0, 2.5}) {
    const auto s = classical::evolve_state(ModelKind::NonlocalNew, {1.0, 0.6}, tau, p);
    CHECK(std::abs(mean_position(KernelVariant::New, psi0, tau, p) - s.x) <= 1e-8);
  }
}

TEST_CASE("free kernels compose exactly") {
  auto p = pure_damping();
  p.gamma = 0.0;
  const auto k1 = free_kernel(0.7, p);
  auto p1 = p;
  p1.t0 = 0.7;
  const auto k2 = free_kernel(1.9, p1);
  const auto composed = compose_kernels(k1, k2);
  const auto direct = free_kernel(1.9, p);
  CHECK(rel_coeff_diff(composed, direct) <= 1e-12);
  CHECK(std::abs(composed.norm - direct.norm) / std::abs(direct.norm) <= 1e-12);
}

TEST_CASE("CK kernels compose") {
  OscillatorParams p;
  const auto d = quantum_composition_defect(KernelVariant::CaldirolaKanai, 0.0, 1.0, 2.0, p);
  CHECK(d.coefficient_distance <= 1e-10);
  CHECK(d.norm_modulus_defect <= 1e-10);
  CHECK(d.norm_phase_defect <= 1e-10);
  CHECK(d.density_defect <= 1e-9);
}

TEST_CASE("nonlocal kernels do not compose") {
  OscillatorParams p;
  const auto d = quantum_composition_defect(KernelVariant::New, 0.0, 1.0, 2.0, p);
  CHECK(d.coefficient_distance > 1e-3);
  CHECK(d.density_defect > 1e-3);

  const auto d0 = quantum_composition_defect(KernelVariant::New, 0.0, 0.0, 2.0, p);
  CHECK(d0.coefficient_distance == 0.0);
  CHECK(d0.density_defect == 0.0);
}

TEST_CASE("degenerate composition throws") {
  OscillatorParams p;
  p.gamma = 0.0;
  p.omega = 0.0;
  auto k1 = free_kernel(1.0, p);
  auto k2 = k1;
  k2.c = -k1.a;
  CHECK_THROWS_AS(compose_kernels(k1, k2), DomainError);
}

TEST_CASE("transformed Hamiltonian coefficients") {
  OscillatorParams p;
  const auto early = appendix_coeffs(1e-7, p);
  CHECK(early.mu == doctest::Approx(1.0 / p.m0).epsilon(1e-12));
  CHECK(std::abs(early.nu) <= 1e-12);

  auto h = p;
  h.gamma = 0.0;
  const auto c = appendix_coeffs(0.9, h);
  CHECK(c.mu == doctest::Approx(1.0 / h.m0));
  CHECK(c.nu == 0.0);
  CHECK(c.lambda_coef == doctest::Approx(h.m0 * h.omega * h.omega).epsilon(1e-12));
  CHECK(appendix_coeffs(1.0, p).mu > 0.0);
}

TEST_CASE("variant names round trip") {
  for (auto v : {KernelVariant::New, KernelVariant::Kochan, KernelVariant::PureDamping, KernelVariant::CaldirolaKanai})
    CHECK(parse_variant(to_string(v)) == v);
  CHECK_THROWS(parse_variant("bogus"));
}
