#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include "memosc/classical.hpp"
#include "memosc/kernels.hpp"
#include "memosc/oracle.hpp"
#include "memosc/quantum.hpp"
#include "memosc/scenario.hpp"
#include "memosc/schrodinger.hpp"

namespace memosc::cli {

namespace {

using classical::composition_defect;
using classical::evolution_matrix;
using quantum::KernelVariant;

constexpr double pi = std::numbers::pi;
using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

/// 0 < gamma < omega <= 2, m0 in [0.5, 2].
OscillatorParams draw_underdamped(Rng& rng) {
  OscillatorParams p;
  p.omega = uniform(rng, 0.05, 2.0);
  p.gamma = uniform(rng, 0.02, 0.98) * p.omega;
  p.m0 = uniform(rng, 0.5, 2.0);
  return p;
}

double max_entry_diff(const EvolutionMatrix& a, const EvolutionMatrix& b) {
  return std::max({std::abs(a.xx - b.xx), std::abs(a.xp - b.xp), std::abs(a.px - b.px), std::abs(a.pp - b.pp)});
}

double coefficient_diff(const quantum::QuadraticKernel& a, const quantum::QuadraticKernel& b) {
  return std::max({std::abs(a.a - b.a), std::abs(a.b - b.b), std::abs(a.c - b.c), std::abs(a.norm - b.norm)});
}

Check omega_identity() {
  Rng rng(11);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto p = draw_underdamped(rng);
    const double W = derived_frequency(p).Omega;
    worst = std::max(worst, std::abs(W * W + p.gamma * p.gamma - p.omega * p.omega) / (p.omega * p.omega));
  }
  return make_check("core.omega_identity", worst, 1e-14);
}

Check symplecticity(ModelKind model) {
  Rng rng(model == ModelKind::NonlocalNew ? 21 : 22);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto p = draw_underdamped(rng);
    const double t = uniform(rng, 1e-3, 20.0) / p.gamma;
    const auto m = evolution_matrix(model, t, p);
    const double scale = std::max(1.0, std::abs(m.xx * m.pp) + std::abs(m.xp * m.px));
    worst = std::max(worst, std::abs(m.det() - 1.0) / scale);
  }
  return make_check("classical.symplecticity_" + to_string(model), worst, tol::scaled(tol::analytic));
}

Check printed_pp_breaks_symplecticity() {
  Rng rng(23);
  int broken = 0;
  for (int i = 0; i < 200; ++i) {
    const auto p = draw_underdamped(rng);
    const double t = uniform(rng, 1e-3, 20.0) / p.gamma;
    if (std::abs(classical::evolution_matrix_printed_pp(t, p).det() - 1.0) > 1e-6) ++broken;
  }
  // Omega = 1 exactly would hide the defect; random draws essentially never hit it.
  return make_check("classical.printed_pp_fails_det", broken, 190, ">");
}

double rk4_vs_closed_form(ModelKind model, PhaseState s0, double t_end, const OscillatorParams& p) {
  oracle::IntegratorSpec spec;
  spec.h = (t_end - p.t0) * 1e-5;
  spec.record_every = 1000;
  auto rhs = [&](double t, const std::array<double, 2>& y) {
    return std::array<double, 2>{y[1], classical::newton_rhs(model, t, y, p)};
  };
  const auto traj = oracle::rk4_integrate<2>(rhs, {s0.x, s0.p / p.m0}, p.t0, t_end, spec);
  double worst = 0.0;
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const auto s = classical::evolve_state(model, s0, traj.times[k], p);
    const double m = classical::mass_at(model, p, traj.times[k]);
    worst = std::max({worst, std::abs(s.x - traj.states[k][0]), std::abs(s.p / m - traj.states[k][1])});
  }
  return worst;
}

Check oracle_equivalence() {
  Rng rng(31);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    OscillatorParams p;
    p.omega = uniform(rng, 0.2, 2.0);
    p.gamma = uniform(rng, 0.1, 0.9) * p.omega;
    p.m0 = uniform(rng, 0.5, 2.0);
    const PhaseState s0{uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0) * p.m0};
    const ModelKind model = i % 2 == 0 ? ModelKind::NonlocalNew : ModelKind::CaldirolaKanai;
    worst = std::max(worst, rk4_vs_closed_form(model, s0, p.t0 + 10.0 / p.gamma, p));
  }
  return make_check("classical.rk4_equivalence", worst, tol::scaled(tol::oracle));
}

Check gamma_limit() {
  OscillatorParams p;
  p.gamma = 1e-6;
  p.omega = 1.0;
  double worst = 0.0;
  for (double t : {0.3, 1.0, 2.5, 7.0}) {
    const EvolutionMatrix rot{std::cos(t), std::sin(t) / p.m0, -p.m0 * std::sin(t), std::cos(t)};
    worst = std::max(worst, max_entry_diff(evolution_matrix(ModelKind::NonlocalNew, t, p), rot));
  }
  return make_check("classical.gamma_limit", worst, tol::scaled(1e-8));
}

std::vector<kernels::DefectTask> random_triples(ModelKind model, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<kernels::DefectTask> tasks;
  for (int i = 0; i < 100; ++i) {
    auto p = draw_underdamped(rng);
    p.gamma = std::max(p.gamma, 0.1 * p.omega);
    const double t1 = uniform(rng, 0.3, 1.5) / p.gamma;
    const double t2 = t1 + uniform(rng, 0.3, 1.5) / p.gamma;
    tasks.push_back({model, {0.0, t1, t2}, p});
  }
  return tasks;
}

Check composition_local() {
  const auto norms = kernels::defect_norms(random_triples(ModelKind::CaldirolaKanai, 41), kernels::Exec::Parallel);
  return make_check("classical.ck_composition", *std::max_element(norms.begin(), norms.end()),
                    tol::scaled(tol::analytic));
}

Check composition_broken() {
  const auto norms = kernels::defect_norms(random_triples(ModelKind::NonlocalNew, 41), kernels::Exec::Parallel);
  const auto count = std::count_if(norms.begin(), norms.end(), [](double n) { return n > 1e-4; });
  return make_check("classical.new_composition_broken_count", static_cast<double>(count), 94.5, ">");
}

Check asymptotic_envelope() {
  // |x(t) - x_asympt| <= C |p0|/(m0 gamma) e^{-2 gamma tau}, plus rounding of x_asympt itself.
  OscillatorParams p;
  p.omega = 0.0;
  const PhaseState s0{0.4, 1.3};
  double worst = 0.0;
  for (auto model : {ModelKind::NonlocalNew, ModelKind::CaldirolaKanai}) {
    const double x_inf = classical::asymptotic_state(model, s0, p).x;
    for (double s = 0.5; s <= 20.0; s += 0.5) {
      const double env = std::abs(s0.p) / (p.m0 * p.gamma) * std::exp(-2.0 * s);
      const double err = std::abs(classical::pure_damping_matrix(model, s / p.gamma, p).apply(s0).x - x_inf);
      worst = std::max(worst, err / (env + 4.0 * std::numeric_limits<double>::epsilon() * std::abs(x_inf)));
    }
  }
  return make_check("classical.asymptotic_envelope_constant", worst, 2.0);
}

Check kappa_riccati() {
  Rng rng(51);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    auto p = draw_underdamped(rng);
    const double t = uniform(rng, 0.0, 20.0) / p.gamma;
    worst = std::max({worst, classical::verify_kappa_riccati(ModelKind::NonlocalNew, t, p),
                      classical::verify_kappa_riccati(ModelKind::CaldirolaKanai, t, p)});
  }
  return make_check("classical.kappa_riccati", worst, 1e-12);
}

Check minus_gamma_rejected() {
  const OscillatorParams p;
  const bool ok = !classical::satisfies_asymptotic_condition(classical::KappaBranch::MinusGamma, p) &&
                  classical::satisfies_asymptotic_condition(classical::KappaBranch::Tanh, p) &&
                  classical::satisfies_asymptotic_condition(classical::KappaBranch::PlusGamma, p);
  return make_check("classical.minus_gamma_branch_rejected", ok ? 0.0 : 1.0, 0.0);
}

std::vector<KernelVariant> closed_variants() {
  return {KernelVariant::New, KernelVariant::Kochan, KernelVariant::PureDamping, KernelVariant::CaldirolaKanai};
}

double random_valid_time(Rng& rng, KernelVariant v, const OscillatorParams& p) {
  if (v == KernelVariant::PureDamping) return p.t0 + uniform(rng, 0.05, 10.0) / p.gamma;
  return p.t0 + uniform(rng, 0.02, 0.95) * pi / derived_frequency(p).Omega;
}

Check unitarity() {
  Rng rng(61);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto p = draw_underdamped(rng);
    const auto psi0 = quantum::GaussianPacket::normalized(uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, 0.3, 3));
    for (auto v : closed_variants()) {
      const auto psi = quantum::apply_kernel(quantum::kernel(v, random_valid_time(rng, v, p), p), psi0);
      worst = std::max(worst, std::abs(psi.norm_squared() - 1.0));
    }
  }
  return make_check("quantum.unitarity", worst, tol::scaled(tol::analytic));
}

Check van_vleck() {
  Rng rng(62);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto p = draw_underdamped(rng);
    for (auto v : closed_variants()) {
      const auto k = quantum::kernel(v, random_valid_time(rng, v, p), p);
      const double lhs = std::norm(k.norm);
      worst = std::max(worst, std::abs(lhs - std::abs(k.b) / (2.0 * pi * p.hbar)) / lhs);
    }
  }
  return make_check("quantum.van_vleck", worst, tol::scaled(tol::analytic));
}

Check density_equivalence() {
  Rng rng(63);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const auto p = draw_underdamped(rng);
    const auto psi0 = quantum::GaussianPacket::normalized(uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, 0.3, 3));
    const double t = random_valid_time(rng, KernelVariant::New, p);
    const auto a = quantum::apply_kernel(quantum::kernel(KernelVariant::New, t, p), psi0);
    const auto b = quantum::apply_kernel(quantum::kernel(KernelVariant::Kochan, t, p), psi0);
    for (int j = 0; j <= 200; ++j) {
      const double x = a.center + (j - 100) * 0.05 * std::sqrt(a.variance());
      worst = std::max(worst, std::abs(a.density(x) - b.density(x)));
    }
  }
  return make_check("quantum.density_equivalence_new_kochan", worst, 1e-12);
}

Check limit_chain() {
  double worst = 0.0;
  OscillatorParams p;
  p.gamma = 1e-6;
  p.omega = 1.0;
  OscillatorParams f;
  f.gamma = 1e-6;
  f.omega = 2e-6;
  for (double t : {0.4, 1.3, 2.6}) {
    worst = std::max(worst, coefficient_diff(quantum::kernel(KernelVariant::New, t, p), quantum::harmonic_kernel(t, p)));
    for (auto v : {KernelVariant::New, KernelVariant::Kochan, KernelVariant::PureDamping})
      worst = std::max(worst, coefficient_diff(quantum::kernel(v, t, f), quantum::free_kernel(t, f)));
  }
  return make_check("quantum.limit_chain", worst, tol::scaled(1e-8));
}

// The CK coefficients carry -/+ m0 gamma terms, so they approach the harmonic and
// free kernels at first order in gamma; checked as deviation / gamma bounded.
Check limit_chain_ck() {
  double worst = 0.0;
  for (double gamma : {1e-6, 1e-8}) {
    OscillatorParams p;
    p.gamma = gamma;
    p.omega = 1.0;
    OscillatorParams f;
    f.gamma = gamma;
    f.omega = 2.0 * gamma;
    for (double t : {0.4, 1.3, 2.6}) {
      const auto ck = quantum::kernel(KernelVariant::CaldirolaKanai, t, p);
      worst = std::max(worst, coefficient_diff(ck, quantum::harmonic_kernel(t, p)) / gamma);
      const auto ck_free = quantum::kernel(KernelVariant::CaldirolaKanai, t, f);
      worst = std::max(worst, coefficient_diff(ck_free, quantum::free_kernel(t, f)) / gamma);
    }
  }
  return make_check("quantum.limit_chain_ck_first_order", worst, 20.0);
}

Check ehrenfest() {
  Rng rng(64);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto p = draw_underdamped(rng);
    const auto psi0 = quantum::GaussianPacket::normalized(uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, 0.3, 3));
    const double t = random_valid_time(rng, KernelVariant::New, p);
    const double x = classical::evolve_state(ModelKind::NonlocalNew, {psi0.center, psi0.momentum}, t, p).x;
    worst = std::max(worst, std::abs(quantum::mean_position(KernelVariant::New, psi0, t, p) - x));
  }
  return make_check("quantum.ehrenfest", worst, tol::scaled(1e-8));
}

struct QuantumTriple {
  OscillatorParams p;
  double t1, t2;
};

std::vector<QuantumTriple> quantum_triples() {
  Rng rng(65);
  std::vector<QuantumTriple> out;
  for (int i = 0; i < 50; ++i) {
    auto p = draw_underdamped(rng);
    p.gamma = std::max(p.gamma, 0.2 * p.omega);
    const double W = derived_frequency(p).Omega;
    const double total = uniform(rng, 0.3, 0.9) * pi / W;
    out.push_back({p, total * uniform(rng, 0.25, 0.75), total});
  }
  return out;
}

Check quantum_composition_ck() {
  double worst = 0.0;
  for (const auto& q : quantum_triples()) {
    const auto d = quantum::quantum_composition_defect(KernelVariant::CaldirolaKanai, 0.0, q.t1, q.t2, q.p);
    worst = std::max({worst, d.coefficient_distance, d.norm_modulus_defect, d.norm_phase_defect});
  }
  return make_check("quantum.ck_composition", worst, tol::scaled(1e-9));
}

Check quantum_composition_new() {
  int broken = 0;
  const auto triples = quantum_triples();
  for (const auto& q : triples)
    if (quantum::quantum_composition_defect(KernelVariant::New, 0.0, q.t1, q.t2, q.p).coefficient_distance > 1e-4)
      ++broken;
  return make_check("quantum.new_composition_broken_fraction", broken / static_cast<double>(triples.size()), 0.9 - 1e-12,
                    ">");
}

Check spreading_bound() {
  double worst = 0.0;  // > 0 means a violation
  for (double gamma : {0.05, 0.3, 1.0, 3.0}) {
    OscillatorParams p;
    p.gamma = gamma;
    p.omega = 0.0;
    for (double sigma : {0.2, 1.0, 4.0}) {
      const auto psi0 = quantum::GaussianPacket::normalized(0.0, 0.7, sigma);
      const double bound = quantum::asymptotic_dispersion(ModelKind::NonlocalNew, sigma, p);
      double prev = sigma;
      for (double s = 0.05; s <= 25.0; s += 0.05) {
        const auto psi = quantum::apply_kernel(quantum::kernel(KernelVariant::PureDamping, s / gamma, p), psi0);
        const double cur = psi.dispersion();
        worst = std::max({worst, prev - cur - 1e-12 * bound, cur - bound - 1e-12 * bound});
        prev = cur;
      }
    }
  }
  return make_check("quantum.spreading_monotone_bounded", std::max(worst, 0.0), 0.0);
}

Check schrodinger(KernelVariant v, std::optional<quantum::Hamiltonian> h, const std::string& name, bool negative) {
  OscillatorParams p;
  const auto grid = quantum::ResidualGrid::standard(p);
  const auto res = quantum::verify_schrodinger(v, grid, p, h);
  return negative ? make_check(name, res.residual, 1e-3, ">") : make_check(name, res.residual, tol::scaled(1e-5));
}

Check rk4_order() {
  OscillatorParams p;
  auto rhs = [&](double t, const std::array<double, 2>& y) {
    return std::array<double, 2>{y[1], classical::newton_rhs(ModelKind::NonlocalNew, t, y, p)};
  };
  const double t_end = 4.0;
  const auto exact = classical::evolve_state(ModelKind::NonlocalNew, {1.0, 0.0}, t_end, p);
  std::vector<double> lh, le;
  for (double h : {0.1, 0.05, 0.025, 0.0125}) {
    oracle::IntegratorSpec spec;
    spec.h = h;
    spec.richardson = false;
    const auto traj = oracle::rk4_integrate<2>(rhs, {1.0, 0.0}, 0.0, t_end, spec);
    lh.push_back(std::log(h));
    le.push_back(std::log(std::abs(traj.states.back()[0] - exact.x)));
  }
  const double slope = (le.back() - le.front()) / (lh.back() - lh.front());
  return make_check("oracle.rk4_order_deviation", std::abs(slope - 4.0), 0.2);
}

Check simpson_order() {
  // Non-vanishing endpoints, so the h^4 term is not masked by Euler-Maclaurin cancellation.
  auto err = [](std::size_t n) {
    const oracle::Grid1D g{0.0, 1.0, n};
    std::vector<double> f(g.n);
    for (std::size_t i = 0; i < g.n; ++i) f[i] = std::exp(g.at(i));
    return std::abs(oracle::simpson(f, g.spacing(), 2.0) - std::expm1(1.0));
  };
  const double slope = std::log(err(41) / err(81)) / std::log(2.0);
  return make_check("oracle.simpson_order_deviation", std::abs(slope - 4.0), 0.3);
}

Check determinism() {
  ScenarioConfig cfg;
  cfg.scenario = "classical-defect";
  cfg.steps = 20;
  const auto a = run_scenario(cfg).series.str();
  const auto b = run_scenario(cfg).series.str();
  return make_check("cli.csv_byte_stable", a == b ? 0.0 : 1.0, 0.0);
}

}  // namespace

VerificationSummary run_verification_suite() {
  using quantum::Hamiltonian;
  const std::vector<std::function<Check()>> suite = {
      omega_identity,
      [] { return symplecticity(ModelKind::NonlocalNew); },
      [] { return symplecticity(ModelKind::CaldirolaKanai); },
      printed_pp_breaks_symplecticity,
      oracle_equivalence,
      gamma_limit,
      composition_local,
      composition_broken,
      asymptotic_envelope,
      kappa_riccati,
      minus_gamma_rejected,
      unitarity,
      van_vleck,
      density_equivalence,
      limit_chain,
      limit_chain_ck,
      ehrenfest,
      quantum_composition_ck,
      quantum_composition_new,
      spreading_bound,
      [] { return schrodinger(KernelVariant::New, std::nullopt, "quantum.schrodinger_new", false); },
      [] { return schrodinger(KernelVariant::CaldirolaKanai, std::nullopt, "quantum.schrodinger_ck", false); },
      [] { return schrodinger(KernelVariant::Kochan, Hamiltonian::Appendix, "quantum.schrodinger_kochan_appendix", false); },
      [] { return schrodinger(KernelVariant::Kochan, Hamiltonian::NewMass, "quantum.kochan_negative_control", true); },
      rk4_order,
      simpson_order,
      determinism,
  };
  VerificationSummary out;
  for (const auto& run : suite) {
    try {
      out.checks.push_back(run());
      out.errors.emplace_back();
    } catch (const std::exception& e) {
      out.checks.push_back({"<error>", 0.0, 0.0, "<=", false});
      out.errors.emplace_back(e.what());
    }
    out.passed = out.passed && out.checks.back().passed;
  }
  return out;
}

}  // namespace memosc::cli
