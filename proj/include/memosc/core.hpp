#pragma once

#include <stdexcept>
#include <string>

namespace memosc {

/// Raised when an input leaves the domain on which a closed form is valid.
/// The message names the violated precondition.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Physical constants of the oscillator. Natural units (m0 = hbar = 1) by default.
struct OscillatorParams {
  double m0 = 1.0;
  double gamma = 0.5;
  double omega = 1.0;
  double hbar = 1.0;
  double t0 = 0.0;
};

/// Damped angular frequency sqrt(omega^2 - gamma^2), shared by both models.
struct DerivedFrequency {
  double Omega;
};

struct PhaseState {
  double x = 0.0;
  double p = 0.0;
};

enum class ModelKind { NonlocalNew, CaldirolaKanai };

std::string to_string(ModelKind model);
ModelKind parse_model(const std::string& name);

/// Real 2x2 linear map acting on (x, p).
struct EvolutionMatrix {
  double xx = 1.0;
  double xp = 0.0;
  double px = 0.0;
  double pp = 1.0;

  [[nodiscard]] double det() const { return xx * pp - xp * px; }
  [[nodiscard]] PhaseState apply(PhaseState s) const { return {xx * s.x + xp * s.p, px * s.x + pp * s.p}; }
  [[nodiscard]] EvolutionMatrix inverse() const { return {pp, -xp, -px, xx}; }  // unit determinant
  [[nodiscard]] static EvolutionMatrix identity() { return {}; }
};

/// Matrix product: (lhs * rhs) applies rhs first.
EvolutionMatrix operator*(const EvolutionMatrix& lhs, const EvolutionMatrix& rhs);

enum class NeedsOmega { No, Yes };

/// Returns `raw` unchanged when every invariant holds, throws DomainError otherwise.
OscillatorParams validate_params(const OscillatorParams& raw, NeedsOmega needs = NeedsOmega::No);

/// Throws DomainError for the overdamped or critically damped regime.
DerivedFrequency derived_frequency(const OscillatorParams& p);

/// Same parameters with the memory time moved to `t_mem` and the reference mass replaced.
OscillatorParams restarted(const OscillatorParams& p, double t_mem, double m_ref);

namespace tol {
inline constexpr double analytic = 1e-10;
inline constexpr double oracle = 1e-6;

/// Multiplier from MEMOSC_TOL_SCALE (defaults to 1). Read once.
double scale();
inline double scaled(double base) { return base * scale(); }
}  // namespace tol

}  // namespace memosc
