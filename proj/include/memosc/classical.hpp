#pragma once

#include <array>

#include "memosc/core.hpp"

namespace memosc::classical {

/// Time-dependent mass of either model; equals params.m0 at the memory time params.t0.
struct MassFunction {
  ModelKind model;
  OscillatorParams params;

  [[nodiscard]] double reference_mass() const { return params.m0; }
};

double mass_at(const MassFunction& mf, double t);
inline double mass_at(ModelKind model, const OscillatorParams& p, double t) { return mass_at({model, p}, t); }

/// Half the logarithmic mass derivative: gamma*tanh(gamma(t-t0)) or gamma.
double kappa(ModelKind model, double t, const OscillatorParams& p);
/// Analytic time derivative of kappa.
double kappa_rate(ModelKind model, double t, const OscillatorParams& p);

/// |kappa' + kappa^2 - gamma^2| from the analytic derivative.
double verify_kappa_riccati(ModelKind model, double t, const OscillatorParams& p);

/// The three solution branches of kappa' + kappa^2 = gamma^2.
enum class KappaBranch { Tanh, PlusGamma, MinusGamma };

double kappa_branch(KappaBranch branch, double t, const OscillatorParams& p);
double kappa_branch_rate(KappaBranch branch, double t, const OscillatorParams& p);
double riccati_residual(KappaBranch branch, double t, const OscillatorParams& p);
/// True when the branch tends to +gamma at late times, i.e. reproduces the standard damping.
bool satisfies_asymptotic_condition(KappaBranch branch, const OscillatorParams& p);

/// Exact phase-space map Lambda(t; t0). Requires omega > gamma and t >= t0.
EvolutionMatrix evolution_matrix(ModelKind model, double t, const OscillatorParams& p);

/// Nonlocal map with the commonly quoted momentum-momentum entry
/// (leading factor Omega on the cosh*cos term). Not symplectic; kept to demonstrate that.
EvolutionMatrix evolution_matrix_printed_pp(double t, const OscillatorParams& p);

PhaseState evolve_state(ModelKind model, PhaseState s0, double t, const OscillatorParams& p);

/// omega = 0 maps. Require gamma > 0; omega is ignored.
EvolutionMatrix pure_damping_matrix(ModelKind model, double t, const OscillatorParams& p);
/// gamma -> 0 limit of the pure damping maps.
EvolutionMatrix free_particle_matrix(double t, const OscillatorParams& p);
/// Late-time limit of pure_damping_matrix.
EvolutionMatrix asymptotic_matrix(ModelKind model, const OscillatorParams& p);
PhaseState asymptotic_state(ModelKind model, PhaseState s0, const OscillatorParams& p);

/// Reference mass used for the second leg when the memory is restarted at t1.
enum class MassRestart {
  Physical,  ///< m(t1) of the first leg
  Initial,   ///< m0
};

struct CompositionDefect {
  EvolutionMatrix defect_matrix;  ///< Lambda(t2;t0) - Lambda(t2;t1) Lambda(t1;t0), raw units
  double norm = 0.0;              ///< max |entry| after scaling xp by m0*Omega and px by 1/(m0*Omega)
};

CompositionDefect composition_defect(ModelKind model, double t0, double t1, double t2, const OscillatorParams& p,
                                     MassRestart restart = MassRestart::Physical);

/// Acceleration of x'' + 2 kappa(t) x' + omega^2 x = 0 for state (x, x').
double newton_rhs(ModelKind model, double t, std::array<double, 2> state, const OscillatorParams& p);

}  // namespace memosc::classical
