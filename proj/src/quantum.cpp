#include "memosc/quantum.hpp"

#include "memosc/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace memosc::quantum {

namespace {

constexpr double pi = std::numbers::pi;
const cplx I{0.0, 1.0};

/// sqrt(X / (2 pi i hbar)) on the principal branch: e^{-i pi/4} sqrt(X / 2 pi hbar) for X > 0.
cplx van_vleck_norm(double X, double hbar) { return std::sqrt(cplx(X / (2.0 * pi * hbar), 0.0) / I); }

double focal_angle(double W, double tau) {
  const double angle = W * tau;
  if (!(angle > 0.0 && angle < pi)) throw DomainError("kernel: 0 < Omega*(t-t0) < pi required (first focal interval)");
  return angle;
}

double forward_tau(double t, const OscillatorParams& p) {
  const double tau = t - p.t0;
  if (!(tau > 0.0)) throw DomainError("kernel: t > t0 required");
  return tau;
}

QuadraticKernel make(KernelVariant v, cplx norm, double a, double b, double c, double t, const OscillatorParams& p) {
  return {norm, a, b, c, p.hbar, v, t, p.t0};
}

}  // namespace

std::string to_string(KernelVariant v) {
  switch (v) {
    case KernelVariant::New: return "new";
    case KernelVariant::Kochan: return "kochan";
    case KernelVariant::PureDamping: return "pure-damping";
    case KernelVariant::CaldirolaKanai: return "ck";
    case KernelVariant::Composed: return "composed";
  }
  return "?";
}

KernelVariant parse_variant(const std::string& name) {
  if (name == "new") return KernelVariant::New;
  if (name == "kochan") return KernelVariant::Kochan;
  if (name == "pure-damping" || name == "pure") return KernelVariant::PureDamping;
  if (name == "ck" || name == "caldirola-kanai") return KernelVariant::CaldirolaKanai;
  throw std::invalid_argument("unknown kernel '" + name + "' (expected new|kochan|pure-damping|ck)");
}

ModelKind model_of(KernelVariant v) {
  return v == KernelVariant::CaldirolaKanai ? ModelKind::CaldirolaKanai : ModelKind::NonlocalNew;
}

cplx QuadraticKernel::log_value(double x, double x0) const {
  return std::log(norm) + I / (2.0 * hbar) * (a * x * x + 2.0 * b * x * x0 + c * x0 * x0);
}

cplx QuadraticKernel::operator()(double x, double x0) const {
  return norm * std::exp(I / (2.0 * hbar) * (a * x * x + 2.0 * b * x * x0 + c * x0 * x0));
}

double b_factor_phase(double t, const OscillatorParams& p) {
  const double W = derived_frequency(p).Omega;
  const double tau = forward_tau(t, p);
  const double angle = focal_angle(W, tau);
  const double sh = std::sinh(p.gamma * tau);
  const double ch = std::cosh(p.gamma * tau);
  return p.m0 * sh / std::sin(angle) * (W * std::cos(angle) * sh - p.gamma * std::sin(angle) * ch);
}

QuadraticKernel kernel(KernelVariant variant, double t, const OscillatorParams& p) {
  validate_params(p);
  const double tau = forward_tau(t, p);
  const double m0 = p.m0;
  const double g = p.gamma;
  switch (variant) {
    case KernelVariant::New:
    case KernelVariant::Kochan: {
      const double W = derived_frequency(p).Omega;
      const double angle = focal_angle(W, tau);
      const double cot = std::cos(angle) / std::sin(angle);
      const double ch = std::cosh(g * tau);
      const double diag = m0 * W * cot;
      const double b = -m0 * W * ch / std::sin(angle);
      const double a = variant == KernelVariant::New ? diag + b_factor_phase(t, p) : diag;
      return make(variant, van_vleck_norm(m0 * W * ch / std::sin(angle), p.hbar), a, b, diag, t, p);
    }
    case KernelVariant::PureDamping: {
      if (!(g > 0.0)) throw DomainError("kernel: pure damping requires gamma > 0");
      const double X = m0 * g / std::tanh(g * tau);
      return make(variant, van_vleck_norm(X, p.hbar), X, -X, X, t, p);
    }
    case KernelVariant::CaldirolaKanai: {
      const double W = derived_frequency(p).Omega;
      const double angle = focal_angle(W, tau);
      const double cot = std::cos(angle) / std::sin(angle);
      const double growth = std::exp(g * tau);
      const double a = m0 * growth * growth * (W * cot - g);
      const double b = -m0 * W * growth / std::sin(angle);
      const double c = m0 * (W * cot + g);
      return make(variant, van_vleck_norm(m0 * W * growth / std::sin(angle), p.hbar), a, b, c, t, p);
    }
    case KernelVariant::Composed: break;
  }
  throw std::invalid_argument("kernel: composed kernels come from compose_kernels");
}

QuadraticKernel harmonic_kernel(double t, const OscillatorParams& p) {
  validate_params(p);
  if (!(p.omega > 0.0)) throw DomainError("harmonic kernel: omega > 0 required");
  const double tau = forward_tau(t, p);
  const double angle = focal_angle(p.omega, tau);
  const double diag = p.m0 * p.omega * std::cos(angle) / std::sin(angle);
  const double b = -p.m0 * p.omega / std::sin(angle);
  return make(KernelVariant::New, van_vleck_norm(-b, p.hbar), diag, b, diag, t, p);
}

QuadraticKernel free_kernel(double t, const OscillatorParams& p) {
  validate_params(p);
  const double tau = forward_tau(t, p);
  const double X = p.m0 / tau;
  return make(KernelVariant::PureDamping, van_vleck_norm(X, p.hbar), X, -X, X, t, p);
}

GaussianPacket GaussianPacket::normalized(double x0, double p0, double sigma, double hbar) {
  if (!(sigma > 0.0)) throw DomainError("packet: sigma > 0 required");
  if (!(hbar > 0.0)) throw DomainError("packet: hbar > 0 required");
  const double amp = std::pow(2.0 / (pi * sigma), 0.25);
  return {x0, p0, cplx(1.0 / sigma, 0.0), cplx(amp, 0.0), hbar};
}

cplx GaussianPacket::operator()(double x) const {
  const double d = x - center;
  return amplitude * std::exp(-width * d * d + I * (momentum * x / hbar));
}

double GaussianPacket::density(double x) const {
  const double d = x - center;
  return std::norm(amplitude) * std::exp(-2.0 * width.real() * d * d);
}

double GaussianPacket::norm_squared() const { return std::norm(amplitude) * std::sqrt(pi / (2.0 * width.real())); }

GaussianPacket apply_kernel(const QuadraticKernel& k, const GaussianPacket& psi0) {
  if (!(psi0.width.real() > 0.0)) throw DomainError("apply_kernel: Re(width) > 0 required");
  const double hb = k.hbar;
  // psi0 = C exp(q2 x0^2 + q1 x0 + q0)
  const cplx q2 = -psi0.width;
  const cplx q1 = 2.0 * psi0.width * psi0.center + I * (psi0.momentum / psi0.hbar);
  const cplx q0 = -psi0.width * psi0.center * psi0.center;
  // integrand exp(-A x0^2 + B(x) x0), B(x) = q1 + i b x / hbar
  const cplx A = -q2 - I * k.c / (2.0 * hb);
  if (!(A.real() > 0.0)) throw DomainError("apply_kernel: Gaussian integral does not converge");
  const cplx out_q2 = I * k.a / (2.0 * hb) - k.b * k.b / (4.0 * hb * hb * A);
  const cplx out_q1 = I * k.b * q1 / (2.0 * hb * A);
  const cplx log_pref = std::log(k.norm) + std::log(psi0.amplitude) + 0.5 * std::log(pi / A) + q0 + q1 * q1 / (4.0 * A);

  GaussianPacket out;
  out.hbar = hb;
  out.width = -out_q2;
  if (!(out.width.real() > 0.0)) throw DomainError("apply_kernel: degenerate output width");
  out.center = out_q1.real() / (2.0 * out.width.real());
  out.momentum = hb * (out_q1.imag() - 2.0 * out.width.imag() * out.center);
  out.amplitude = std::exp(log_pref + out.width * out.center * out.center);
  return out;
}

QuadraticKernel compose_kernels(const QuadraticKernel& earlier, const QuadraticKernel& later) {
  if (earlier.hbar != later.hbar) throw DomainError("compose_kernels: kernels must share hbar");
  const double hb = earlier.hbar;
  const cplx s = earlier.a + later.c;
  if (std::abs(s) <= 1e-14 * (std::abs(earlier.a) + std::abs(later.c)))
    throw DomainError("compose_kernels: a1 + c2 = 0 (degenerate stationary phase)");

  // The x1 integrand is exp{(i/2hbar) s x1^2 - eps x1^2 + ...}; eps > 0 makes it a
  // convergent Gaussian whose sqrt has an unambiguous principal branch. The eps -> 0
  // limit is taken by Richardson extrapolation, f(0) = 2 f(eps) - f(2 eps) + O(eps^2).
  auto at = [&](double eps) {
    const cplx s_eps = s + 2.0 * I * hb * eps;
    const cplx A = -I * s_eps / (2.0 * hb);
    QuadraticKernel k;
    k.a = later.a - later.b * later.b / s_eps;
    k.b = -earlier.b * later.b / s_eps;
    k.c = earlier.c - earlier.b * earlier.b / s_eps;
    k.norm = earlier.norm * later.norm * std::sqrt(pi / A);
    return k;
  };
  const double eps = 1e-8 * std::abs(s) / (2.0 * hb);
  const QuadraticKernel k1 = at(eps);
  const QuadraticKernel k2 = at(2.0 * eps);
  QuadraticKernel out;
  out.a = 2.0 * k1.a - k2.a;
  out.b = 2.0 * k1.b - k2.b;
  out.c = 2.0 * k1.c - k2.c;
  out.norm = 2.0 * k1.norm - k2.norm;
  out.hbar = hb;
  out.variant = KernelVariant::Composed;
  out.t = later.t;
  out.t_mem = earlier.t_mem;
  return out;
}

GaussianPacket reference_packet(double hbar) { return GaussianPacket::normalized(0.5, 0.5, 1.0, hbar); }

namespace {

double l2_modulus_distance(const GaussianPacket& u, const GaussianPacket& v) {
  const double spread = std::sqrt(std::max(u.variance(), v.variance()));
  const double lo = std::min(u.center, v.center) - 14.0 * spread;
  const double hi = std::max(u.center, v.center) + 14.0 * spread;
  const auto grid = oracle::Grid1D{lo, hi, 8001};
  std::vector<double> f(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double x = grid.at(i);
    const double d = std::sqrt(u.density(x)) - std::sqrt(v.density(x));
    f[i] = d * d;
  }
  return std::sqrt(oracle::simpson(f, grid.spacing()));
}

}  // namespace

QuantumCompositionDefect quantum_composition_defect(KernelVariant variant, double t0, double t1, double t2,
                                                    const OscillatorParams& p, classical::MassRestart restart,
                                                    const GaussianPacket* packet) {
  if (!(t0 <= t1 && t1 <= t2)) throw DomainError("composition: t0 <= t1 <= t2 required");
  if (!(t2 > t0)) throw DomainError("composition: t2 > t0 required");
  OscillatorParams base = p;
  base.t0 = t0;
  const double freq = variant == KernelVariant::PureDamping ? base.gamma : derived_frequency(base).Omega;
  const double unit = base.m0 * freq;

  QuantumCompositionDefect out;
  out.direct = kernel(variant, t2, base);
  if (t1 == t0 || t1 == t2) {
    out.composed = out.direct;  // one leg is the identity
  } else {
    const ModelKind model = model_of(variant);
    const double m1 = restart == classical::MassRestart::Physical ? classical::mass_at(model, base, t1) : base.m0;
    const QuadraticKernel first = kernel(variant, t1, base);
    const QuadraticKernel second = kernel(variant, t2, restarted(base, t1, m1));
    out.composed = compose_kernels(first, second);
  }
  const auto& d = out.direct;
  const auto& c = out.composed;
  // Relative to the largest coefficient: near focal points and for short legs the
  // coefficients are large and an absolute distance would only measure rounding.
  const double scale = std::max({unit, std::abs(d.a), std::abs(d.b), std::abs(d.c)});
  out.coefficient_distance = std::max({std::abs(d.a - c.a), std::abs(d.b - c.b), std::abs(d.c - c.c)}) / scale;
  out.norm_modulus_defect = std::abs(std::abs(c.norm) - std::abs(d.norm)) / std::abs(d.norm);
  out.norm_phase_defect = std::abs(std::arg(c.norm / d.norm));

  const GaussianPacket psi0 = packet != nullptr ? *packet : reference_packet(base.hbar);
  out.density_defect = l2_modulus_distance(apply_kernel(d, psi0), apply_kernel(c, psi0));
  return out;
}

namespace {

void require_pure_damping(const OscillatorParams& p) {
  validate_params(p);
  if (!(p.gamma > 0.0)) throw DomainError("pure damping density: gamma > 0 required");
}

double xp_entry(ModelKind model, double t, const OscillatorParams& p) {
  return classical::pure_damping_matrix(model, t, p).xp;
}

}  // namespace

double pure_damping_center(ModelKind model, const GaussianPacket& psi0, double t, const OscillatorParams& p) {
  return psi0.center + psi0.momentum * xp_entry(model, t, p);
}

double pure_damping_dispersion(ModelKind model, double sigma, double t, const OscillatorParams& p,
                               DispersionFormula formula) {
  require_pure_damping(p);
  if (formula == DispersionFormula::Printed) {
    if (model != ModelKind::NonlocalNew) throw DomainError("dispersion: no printed finite-time law for this model");
    const double r = p.hbar * std::tanh(p.gamma * (t - p.t0)) / (p.m0 * sigma * p.gamma);
    return sigma * (1.0 + r * r);
  }
  const double r = 2.0 * p.hbar * xp_entry(model, t, p) / sigma;
  return sigma * (1.0 + r * r);
}

double asymptotic_center(ModelKind model, const GaussianPacket& psi0, const OscillatorParams& p) {
  return psi0.center + psi0.momentum * classical::asymptotic_matrix(model, p).xp;
}

double asymptotic_dispersion(ModelKind model, double sigma, const OscillatorParams& p, DispersionFormula formula) {
  require_pure_damping(p);
  if (formula == DispersionFormula::Printed) {
    const double r = p.hbar / (p.m0 * p.gamma * sigma);
    return sigma * (1.0 + r * r);
  }
  const double r = 2.0 * p.hbar * classical::asymptotic_matrix(model, p).xp / sigma;
  return sigma * (1.0 + r * r);
}

namespace {

void fill_rows(DensityProfile& prof, double amp2, double sigma0) {
  std::vector<double> peak(prof.center.size());
  for (std::size_t i = 0; i < peak.size(); ++i) peak[i] = amp2 / std::sqrt(prof.dispersion[i] / sigma0);
  prof.rho = kernels::density_rows({prof.positions, prof.center, prof.dispersion, peak}, kernels::Exec::Parallel);
}

void require_closed_form_packet(const GaussianPacket& psi0, const OscillatorParams& p) {
  require_pure_damping(p);
  if (p.omega != 0.0) throw DomainError("density_closed_form: omega = 0 required (pure damping regime)");
  if (psi0.width.imag() != 0.0 || !(psi0.width.real() > 0.0))
    throw DomainError("density_closed_form: real positive initial width required");
}

}  // namespace

DensityProfile density_closed_form(const GaussianPacket& psi0, std::span<const double> times,
                                   std::span<const double> positions, const OscillatorParams& p,
                                   DispersionFormula formula) {
  require_closed_form_packet(psi0, p);
  const double sigma0 = psi0.dispersion();
  DensityProfile prof;
  prof.times.assign(times.begin(), times.end());
  prof.positions.assign(positions.begin(), positions.end());
  for (const double t : times) {
    prof.center.push_back(pure_damping_center(ModelKind::NonlocalNew, psi0, t, p));
    prof.dispersion.push_back(pure_damping_dispersion(ModelKind::NonlocalNew, sigma0, t, p, formula));
  }
  fill_rows(prof, std::norm(psi0.amplitude), sigma0);
  return prof;
}

DensityProfile asymptotic_density(const GaussianPacket& psi0, ModelKind model, std::span<const double> positions,
                                  const OscillatorParams& p, DispersionFormula formula) {
  require_closed_form_packet(psi0, p);
  const double sigma0 = psi0.dispersion();
  DensityProfile prof;
  prof.times = {HUGE_VAL};
  prof.positions.assign(positions.begin(), positions.end());
  prof.center = {asymptotic_center(model, psi0, p)};
  prof.dispersion = {asymptotic_dispersion(model, sigma0, p, formula)};
  fill_rows(prof, std::norm(psi0.amplitude), sigma0);
  return prof;
}

double mean_position(KernelVariant variant, const GaussianPacket& psi0, double t, const OscillatorParams& p) {
  if (t == p.t0) return psi0.center;
  return apply_kernel(kernel(variant, t, p), psi0).center;
}

double mean_position_residual(const GaussianPacket& psi0, double t, const OscillatorParams& p, double h,
                              KernelVariant variant) {
  if (!(h > 0.0)) throw DomainError("mean_position_residual: h > 0 required");
  if (t - h < p.t0) throw DomainError("mean_position_residual: stencil reaches before t0");
  const double xm = mean_position(variant, psi0, t - h, p);
  const double x = mean_position(variant, psi0, t, p);
  const double xq = mean_position(variant, psi0, t + h, p);
  const double v = (xq - xm) / (2.0 * h);
  const double acc = (xq - 2.0 * x + xm) / (h * h);
  return std::abs(acc + 2.0 * classical::kappa(ModelKind::NonlocalNew, t, p) * v + p.omega * p.omega * x);
}

XpHamiltonianCoeffs appendix_coeffs(double t, const OscillatorParams& p) {
  const double W = derived_frequency(p).Omega;
  const double tau = t - p.t0;
  const double s = std::sin(W * tau);
  const double c = std::cos(W * tau);
  if (!(std::abs(s) > 1e-12)) throw DomainError("appendix_coeffs: Omega*(t-t0) must avoid multiples of pi");
  const double T = std::tanh(p.gamma * tau);
  const double ch = std::cosh(p.gamma * tau);
  const double cot = c / s;
  XpHamiltonianCoeffs out;
  out.mu = 1.0 / (p.m0 * ch * ch);
  out.nu = T * (W * T * cot - p.gamma);
  out.lambda_coef = p.m0 * W * W * (2.0 * p.gamma / W * T * cot + (1.0 - (1.0 + T * T) * c * c) / (s * s));
  return out;
}

}  // namespace memosc::quantum
