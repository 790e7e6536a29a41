#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "memosc/classical.hpp"
#include "memosc/core.hpp"
#include "memosc/oracle.hpp"

namespace memosc::quantum {

using cplx = std::complex<double>;

enum class KernelVariant {
  New,             ///< full nonlocal propagator N*A*B
  Kochan,          ///< N*A, i.e. without the B phase
  PureDamping,     ///< omega = 0 nonlocal propagator
  CaldirolaKanai,  ///< mass m0*exp(2*gamma*(t-t0))
  Composed,        ///< result of compose_kernels
};

std::string to_string(KernelVariant v);
KernelVariant parse_variant(const std::string& name);
/// Classical model whose mass function the variant is built on.
ModelKind model_of(KernelVariant v);

/// K(x, x0) = norm * exp{(i/2hbar)(a x^2 + 2 b x x0 + c x0^2)}.
/// The closed-form kernels have real a, b, c; composed kernels may carry
/// rounding-level imaginary parts from the regularized integral.
struct QuadraticKernel {
  cplx norm;
  cplx a, b, c;
  double hbar = 1.0;
  KernelVariant variant = KernelVariant::New;
  double t = 0.0;      ///< final time
  double t_mem = 0.0;  ///< memory / initial time

  [[nodiscard]] cplx operator()(double x, double x0) const;
  [[nodiscard]] cplx log_value(double x, double x0) const;
};

/// Closed-form propagator from t_mem = p.t0 to t.
QuadraticKernel kernel(KernelVariant variant, double t, const OscillatorParams& p);

/// Textbook references for the limit checks: harmonic oscillator at frequency omega and free particle.
QuadraticKernel harmonic_kernel(double t, const OscillatorParams& p);
QuadraticKernel free_kernel(double t, const OscillatorParams& p);

/// x^2-phase coefficient beta(t) with B = exp{i beta x^2 / (2 hbar)}.
double b_factor_phase(double t, const OscillatorParams& p);

/// psi(x) = amplitude * exp{-width (x - center)^2 + i momentum x / hbar}.
struct GaussianPacket {
  double center = 0.0;
  double momentum = 0.0;
  cplx width{1.0, 0.0};
  cplx amplitude{1.0, 0.0};
  double hbar = 1.0;

  /// Unit-norm packet C exp{-(x - x0)^2/sigma + i p0 x/hbar}.
  static GaussianPacket normalized(double x0, double p0, double sigma, double hbar = 1.0);

  [[nodiscard]] cplx operator()(double x) const;
  [[nodiscard]] double density(double x) const;
  [[nodiscard]] double norm_squared() const;
  [[nodiscard]] double variance() const { return 0.25 / width.real(); }
  /// sigma(t) in the convention rho ~ exp{-2 (x - center)^2 / sigma(t)}.
  [[nodiscard]] double dispersion() const { return 1.0 / width.real(); }
};

/// Exact Gaussian integral of k(x, x0) psi0(x0) over x0.
GaussianPacket apply_kernel(const QuadraticKernel& k, const GaussianPacket& psi0);

/// Integral over the intermediate point of later(x2, x1) * earlier(x1, x0).
/// Evaluated with an eps-damped Gaussian (eps = 1e-8 |a1 + c2| / 2hbar) and
/// Richardson-extrapolated to eps -> 0. Throws when a1 + c2 vanishes.
QuadraticKernel compose_kernels(const QuadraticKernel& earlier, const QuadraticKernel& later);

struct QuantumCompositionDefect {
  double coefficient_distance = 0.0;  ///< max |delta a,b,c| / max(m0 * frequency, |a|, |b|, |c|)
  double norm_modulus_defect = 0.0;   ///< | |N_c| - |N_d| | / |N_d|
  double norm_phase_defect = 0.0;     ///< |arg(N_c / N_d)|
  double density_defect = 0.0;        ///< L2 distance between |psi| of both routes
  QuadraticKernel direct;
  QuadraticKernel composed;
};

/// Reference packet used for the density-level comparison unless one is supplied.
GaussianPacket reference_packet(double hbar = 1.0);

QuantumCompositionDefect quantum_composition_defect(KernelVariant variant, double t0, double t1, double t2,
                                                    const OscillatorParams& p,
                                                    classical::MassRestart restart = classical::MassRestart::Physical,
                                                    const GaussianPacket* packet = nullptr);

/// Spreading law for the omega = 0 packet.
enum class DispersionFormula {
  Exact,    ///< follows from the kernel: sigma [1 + (2 hbar Lambda_xp / sigma)^2]
  Printed,  ///< sigma [1 + (hbar tanh / (m0 sigma gamma))^2], the commonly quoted law
};

double pure_damping_center(ModelKind model, const GaussianPacket& psi0, double t, const OscillatorParams& p);
double pure_damping_dispersion(ModelKind model, double sigma, double t, const OscillatorParams& p,
                               DispersionFormula formula = DispersionFormula::Exact);
double asymptotic_center(ModelKind model, const GaussianPacket& psi0, const OscillatorParams& p);
double asymptotic_dispersion(ModelKind model, double sigma, const OscillatorParams& p,
                             DispersionFormula formula = DispersionFormula::Exact);

struct DensityProfile {
  std::vector<double> times;
  std::vector<double> positions;
  oracle::Field2D<double> rho;  ///< rows: times, cols: positions
  std::vector<double> center;
  std::vector<double> dispersion;
};

/// Closed-form omega = 0 density of the nonlocal model. Requires omega == 0,
/// gamma > 0 and a real initial width.
DensityProfile density_closed_form(const GaussianPacket& psi0, std::span<const double> times,
                                   std::span<const double> positions, const OscillatorParams& p,
                                   DispersionFormula formula = DispersionFormula::Exact);

/// Late-time limit of the omega = 0 density (single row, time = +inf).
DensityProfile asymptotic_density(const GaussianPacket& psi0, ModelKind model, std::span<const double> positions,
                                  const OscillatorParams& p, DispersionFormula formula = DispersionFormula::Exact);

/// <x>(t) from the analytic packet propagation.
double mean_position(KernelVariant variant, const GaussianPacket& psi0, double t, const OscillatorParams& p);

/// |<x>'' + 2 gamma tanh(gamma(t-t0)) <x>' + omega^2 <x>| from a 3-point stencil of width h.
double mean_position_residual(const GaussianPacket& psi0, double t, const OscillatorParams& p, double h = 1e-3,
                              KernelVariant variant = KernelVariant::New);

/// Coefficients of H = mu p^2 / 2 + nu (xp)_sym + lambda x^2 / 2.
struct XpHamiltonianCoeffs {
  double mu = 0.0;
  double nu = 0.0;
  double lambda_coef = 0.0;
};

/// Transformed Hamiltonian whose propagator is the Kochan kernel.
XpHamiltonianCoeffs appendix_coeffs(double t, const OscillatorParams& p);

}  // namespace memosc::quantum
