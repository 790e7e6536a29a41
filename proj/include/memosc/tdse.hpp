#pragma once

#include <complex>
#include <vector>

#include "memosc/kernels.hpp"
#include "memosc/oracle.hpp"
#include "memosc/quantum.hpp"

namespace memosc::quantum {

struct TdseResult {
  oracle::Grid1D grid;
  std::vector<std::complex<double>> psi;
  double t = 0.0;
  std::size_t steps = 0;

  [[nodiscard]] double norm() const;
  [[nodiscard]] double mean_position() const;
  /// 4 * variance, the sigma(t) convention of GaussianPacket::dispersion.
  [[nodiscard]] double dispersion() const;
  /// |<ref|psi>|^2 / (<ref|ref><psi|psi>).
  [[nodiscard]] double fidelity(const GaussianPacket& ref) const;
  [[nodiscard]] double fidelity(const std::vector<std::complex<double>>& ref) const;
};

/// Crank-Nicolson evolution of psi0 from p.t0 to t under p^2/2m(t) + m(t) omega^2 x^2/2
/// with Dirichlet walls at center +- half_width. Fourth-order compact stencil in space,
/// mass taken at each step midpoint, optional dt Richardson step (spec.time_richardson).
/// spec.dt is shrunk so that t is reached in an integer number of steps.
TdseResult numeric_tdse_oracle(const GaussianPacket& psi0, ModelKind model, double t, const OscillatorParams& p,
                               const oracle::GridSpec& spec, kernels::Exec exec = kernels::Exec::Parallel);

}  // namespace memosc::quantum
