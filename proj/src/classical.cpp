#include "memosc/classical.hpp"

#include <algorithm>
#include <cmath>

namespace memosc::classical {

namespace {

void require_forward(double t, const OscillatorParams& p) {
  if (t < p.t0) throw DomainError("evolution: t >= t0 required");
}

void require_damping(const OscillatorParams& p) {
  validate_params(p);
  if (!(p.gamma > 0.0)) throw DomainError("pure damping: gamma > 0 required (use free_particle_matrix)");
}

}  // namespace

double mass_at(const MassFunction& mf, double t) {
  const auto& p = mf.params;
  const double s = p.gamma * (t - p.t0);
  switch (mf.model) {
    case ModelKind::NonlocalNew: {
      const double c = std::cosh(s);
      return p.m0 * c * c;
    }
    case ModelKind::CaldirolaKanai: return p.m0 * std::exp(2.0 * s);
  }
  return p.m0;
}

double kappa(ModelKind model, double t, const OscillatorParams& p) {
  return model == ModelKind::NonlocalNew ? kappa_branch(KappaBranch::Tanh, t, p)
                                         : kappa_branch(KappaBranch::PlusGamma, t, p);
}

double kappa_rate(ModelKind model, double t, const OscillatorParams& p) {
  return model == ModelKind::NonlocalNew ? kappa_branch_rate(KappaBranch::Tanh, t, p)
                                         : kappa_branch_rate(KappaBranch::PlusGamma, t, p);
}

double verify_kappa_riccati(ModelKind model, double t, const OscillatorParams& p) {
  return model == ModelKind::NonlocalNew ? riccati_residual(KappaBranch::Tanh, t, p)
                                         : riccati_residual(KappaBranch::PlusGamma, t, p);
}

double kappa_branch(KappaBranch branch, double t, const OscillatorParams& p) {
  switch (branch) {
    case KappaBranch::Tanh: return p.gamma * std::tanh(p.gamma * (t - p.t0));
    case KappaBranch::PlusGamma: return p.gamma;
    case KappaBranch::MinusGamma: return -p.gamma;
  }
  return 0.0;
}

double kappa_branch_rate(KappaBranch branch, double t, const OscillatorParams& p) {
  if (branch != KappaBranch::Tanh) return 0.0;
  const double sech = 1.0 / std::cosh(p.gamma * (t - p.t0));
  return p.gamma * p.gamma * sech * sech;
}

double riccati_residual(KappaBranch branch, double t, const OscillatorParams& p) {
  const double k = kappa_branch(branch, t, p);
  return std::abs(kappa_branch_rate(branch, t, p) + k * k - p.gamma * p.gamma);
}

bool satisfies_asymptotic_condition(KappaBranch branch, const OscillatorParams& p) {
  if (!(p.gamma > 0.0)) return branch != KappaBranch::MinusGamma;
  // 40 damping times is far past where tanh has saturated to double precision.
  const double late = p.t0 + 40.0 / p.gamma;
  return std::abs(kappa_branch(branch, late, p) - p.gamma) <= 1e-12 * p.gamma;
}

EvolutionMatrix evolution_matrix(ModelKind model, double t, const OscillatorParams& p) {
  const double W = derived_frequency(p).Omega;
  require_forward(t, p);
  const double tau = t - p.t0;
  const double g = p.gamma;
  const double m0 = p.m0;
  const double c = std::cos(W * tau);
  const double s = std::sin(W * tau);
  if (model == ModelKind::NonlocalNew) {
    const double ch = std::cosh(g * tau);
    const double sh = std::sinh(g * tau);
    return {c / ch, s / (m0 * W * ch), -m0 * (W * ch * s + g * sh * c), ch * c - (g / W) * sh * s};
  }
  const double decay = std::exp(-g * tau);
  const double growth = std::exp(g * tau);
  return {(c + (g / W) * s) * decay, s * decay / (m0 * W), -m0 * W * (1.0 + g * g / (W * W)) * s * growth,
          (c - (g / W) * s) * growth};
}

EvolutionMatrix evolution_matrix_printed_pp(double t, const OscillatorParams& p) {
  EvolutionMatrix m = evolution_matrix(ModelKind::NonlocalNew, t, p);
  const double W = derived_frequency(p).Omega;
  const double tau = t - p.t0;
  m.pp = W * std::cosh(p.gamma * tau) * std::cos(W * tau) - (p.gamma / W) * std::sinh(p.gamma * tau) * std::sin(W * tau);
  return m;
}

PhaseState evolve_state(ModelKind model, PhaseState s0, double t, const OscillatorParams& p) {
  return evolution_matrix(model, t, p).apply(s0);
}

EvolutionMatrix pure_damping_matrix(ModelKind model, double t, const OscillatorParams& p) {
  require_damping(p);
  require_forward(t, p);
  const double s = p.gamma * (t - p.t0);
  const double scale = 1.0 / (p.m0 * p.gamma);
  // sinh(s) e^{-s} = -expm1(-2s)/2
  const double xp = model == ModelKind::NonlocalNew ? scale * std::tanh(s) : -scale * 0.5 * std::expm1(-2.0 * s);
  return {1.0, xp, 0.0, 1.0};
}

EvolutionMatrix free_particle_matrix(double t, const OscillatorParams& p) {
  validate_params(p);
  require_forward(t, p);
  return {1.0, (t - p.t0) / p.m0, 0.0, 1.0};
}

EvolutionMatrix asymptotic_matrix(ModelKind model, const OscillatorParams& p) {
  require_damping(p);
  const double xp = 1.0 / (p.m0 * p.gamma);
  return {1.0, model == ModelKind::NonlocalNew ? xp : 0.5 * xp, 0.0, 1.0};
}

PhaseState asymptotic_state(ModelKind model, PhaseState s0, const OscillatorParams& p) {
  return asymptotic_matrix(model, p).apply(s0);
}

CompositionDefect composition_defect(ModelKind model, double t0, double t1, double t2, const OscillatorParams& p,
                                     MassRestart restart) {
  if (!(t0 <= t1 && t1 <= t2)) throw DomainError("composition: t0 <= t1 <= t2 required");
  OscillatorParams base = p;
  base.t0 = t0;
  const double W = derived_frequency(base).Omega;
  const double m1 = restart == MassRestart::Physical ? mass_at(model, base, t1) : base.m0;
  const EvolutionMatrix direct = evolution_matrix(model, t2, base);
  const EvolutionMatrix first = evolution_matrix(model, t1, base);
  const EvolutionMatrix second = evolution_matrix(model, t2, restarted(base, t1, m1));
  const EvolutionMatrix composed = second * first;

  CompositionDefect out;
  out.defect_matrix = {direct.xx - composed.xx, direct.xp - composed.xp, direct.px - composed.px,
                       direct.pp - composed.pp};
  const double unit = base.m0 * W;
  const auto& d = out.defect_matrix;
  out.norm = std::max({std::abs(d.xx), std::abs(d.xp) * unit, std::abs(d.px) / unit, std::abs(d.pp)});
  return out;
}

double newton_rhs(ModelKind model, double t, std::array<double, 2> state, const OscillatorParams& p) {
  return -2.0 * kappa(model, t, p) * state[1] - p.omega * p.omega * state[0];
}

}  // namespace memosc::classical
