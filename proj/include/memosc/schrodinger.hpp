#pragma once

#include <optional>
#include <vector>

#include "memosc/kernels.hpp"
#include "memosc/quantum.hpp"

namespace memosc::quantum {

/// Hamiltonian a kernel is checked against.
enum class Hamiltonian {
  NewMass,  ///< p^2/2m + m omega^2 x^2/2 with m = m0 cosh^2
  CkMass,   ///< same with m = m0 exp(2 gamma (t-t0))
  Appendix, ///< mu p^2/2 + nu (xp)_sym + lambda x^2/2 from appendix_coeffs
};

Hamiltonian native_hamiltonian(KernelVariant variant);
XpHamiltonianCoeffs hamiltonian_coeffs(Hamiltonian h, double t, const OscillatorParams& p);

/// Sample points for the residual: absolute times, final positions, one source point.
struct ResidualGrid {
  std::vector<double> times;
  std::vector<double> xs;
  double x0 = 0.3;

  /// t - t0 in [0.2, 1.5], x in [-1, 1].
  static ResidualGrid standard(const OscillatorParams& p);
};

/// max |i hbar dK/dt - H K| / max |K| over the grid; 4th-order in x, time_order (2 or 4) in t.
double schrodinger_residual(KernelVariant variant, Hamiltonian h, const ResidualGrid& grid, const OscillatorParams& p,
                            double h_t, double h_x, kernels::Exec exec = kernels::Exec::Parallel, int time_order = 2);

struct SchrodingerCheck {
  double residual = 0.0;
  double step = 0.0;            ///< h_t at which the sweep stopped; h_x = max(h_t, 1e-3)
  std::vector<double> history;  ///< residual at each step of the sweep
};

/// Residual with step sizes from a convergence sweep: starting at h_t = 1e-2 the
/// step is halved until the residual changes by less than 10%, grows (rounding), or h_t
/// would drop below 1e-6. Reports the smallest residual reached.
SchrodingerCheck verify_schrodinger(KernelVariant variant, const ResidualGrid& grid, const OscillatorParams& p,
                                    std::optional<Hamiltonian> h = std::nullopt, int time_order = 2);

}  // namespace memosc::quantum
