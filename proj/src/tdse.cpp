#include "memosc/tdse.hpp"

#include <algorithm>
#include <cmath>

namespace memosc::quantum {

namespace {

using cplx = std::complex<double>;

double edge_ratio(const std::vector<cplx>& psi) {
  double peak = 0.0;
  for (const auto& v : psi) peak = std::max(peak, std::norm(v));
  return std::max(std::norm(psi.front()), std::norm(psi.back())) / peak;
}

std::vector<double> densities(const std::vector<cplx>& psi) {
  std::vector<double> rho(psi.size());
  std::transform(psi.begin(), psi.end(), rho.begin(), [](cplx v) { return std::norm(v); });
  return rho;
}

/// Thomas algorithm; overwrites rhs with the solution.
void solve_tridiagonal(const kernels::Tridiagonal& a, std::vector<cplx>& rhs, std::vector<cplx>& scratch) {
  const std::size_t n = a.diag.size();
  scratch.resize(n);
  cplx inv = 1.0 / a.diag[0];
  scratch[0] = a.upper[0] * inv;
  rhs[0] *= inv;
  for (std::size_t j = 1; j < n; ++j) {
    inv = 1.0 / (a.diag[j] - a.lower[j] * scratch[j - 1]);
    scratch[j] = a.upper[j] * inv;
    rhs[j] = (rhs[j] - a.lower[j] * rhs[j - 1]) * inv;
  }
  for (std::size_t j = n - 1; j-- > 0;) rhs[j] -= scratch[j] * rhs[j + 1];
}

/// Advances psi from p.t0 by `steps` equal steps ending at t.
void crank_nicolson(std::vector<cplx>& psi, const std::vector<double>& xs, ModelKind model, const OscillatorParams& p,
                    double t, std::size_t steps, kernels::Exec exec) {
  const double dt = (t - p.t0) / static_cast<double>(steps);
  const double dx = xs[1] - xs[0];
  const double hb = p.hbar;
  // Compact fourth-order (Numerov) Crank-Nicolson:
  //   (M + s H) psi^{n+1} = (M - s H) psi^n,  s = i dt / (2 hbar),
  // with M = tridiag(1, 10, 1)/12 and H = -(hbar^2/2m) delta^2/dx^2 + (M V + V M)/2.
  // M is SPD and H symmetric, so each step is a Cayley transform: the M-norm is
  // conserved exactly. The symmetrised potential term is 2nd order when omega > 0.
  const std::size_t n_pts = xs.size();
  std::vector<double> pot(n_pts);
  std::vector<cplx> al(n_pts), ad(n_pts), au(n_pts), bl(n_pts), bd(n_pts), bu(n_pts), work(n_pts), scratch;
  const cplx s{0.0, 0.5 * dt / hb};
  for (std::size_t n = 0; n < steps; ++n) {
    const double tm = p.t0 + (static_cast<double>(n) + 0.5) * dt;
    const double m = classical::mass_at(model, p, tm);
    const double kinetic = hb * hb / (2.0 * m * dx * dx);
    for (std::size_t j = 0; j < n_pts; ++j) pot[j] = 0.5 * m * p.omega * p.omega * xs[j] * xs[j];
    for (std::size_t j = 0; j < n_pts; ++j) {
      const double v_lo = j > 0 ? pot[j - 1] : 0.0;
      const double v_hi = j + 1 < n_pts ? pot[j + 1] : 0.0;
      const cplx h_lo = -kinetic + (v_lo + pot[j]) / 24.0;
      const cplx h_d = 2.0 * kinetic + 10.0 * pot[j] / 12.0;
      const cplx h_hi = -kinetic + (pot[j] + v_hi) / 24.0;
      al[j] = 1.0 / 12.0 + s * h_lo;
      ad[j] = 10.0 / 12.0 + s * h_d;
      au[j] = 1.0 / 12.0 + s * h_hi;
      bl[j] = 1.0 / 12.0 - s * h_lo;
      bd[j] = 10.0 / 12.0 - s * h_d;
      bu[j] = 1.0 / 12.0 - s * h_hi;
    }
    kernels::tridiagonal_apply({bl, bd, bu}, psi, work, exec);
    solve_tridiagonal({al, ad, au}, work, scratch);
    psi.swap(work);
  }
}

}  // namespace

double TdseResult::norm() const { return oracle::simpson(densities(psi), grid.spacing(), 1.0); }

double TdseResult::mean_position() const {
  auto rho = densities(psi);
  const double n = oracle::simpson(rho, grid.spacing(), 1.0);
  for (std::size_t i = 0; i < rho.size(); ++i) rho[i] *= grid.at(i);
  return oracle::simpson(rho, grid.spacing(), 1.0) / n;
}

double TdseResult::dispersion() const {
  const double mean = mean_position();
  auto rho = densities(psi);
  const double n = oracle::simpson(rho, grid.spacing(), 1.0);
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const double d = grid.at(i) - mean;
    rho[i] *= d * d;
  }
  return 4.0 * oracle::simpson(rho, grid.spacing(), 1.0) / n;
}

double TdseResult::fidelity(const std::vector<cplx>& ref) const {
  std::vector<cplx> overlap(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) overlap[i] = std::conj(ref[i]) * psi[i];
  const double h = grid.spacing();
  const cplx o = oracle::simpson(overlap, h, 1.0);
  return std::norm(o) / (oracle::simpson(densities(ref), h, 1.0) * norm());
}

double TdseResult::fidelity(const GaussianPacket& ref) const {
  return fidelity(kernels::sample_packet(ref, grid.points(), kernels::Exec::Parallel));
}

TdseResult numeric_tdse_oracle(const GaussianPacket& psi0, ModelKind model, double t, const OscillatorParams& p,
                               const oracle::GridSpec& spec, kernels::Exec exec) {
  validate_params(p);
  spec.validate();
  if (!(t >= p.t0)) throw oracle::OracleError("tdse: t >= t0 required");
  TdseResult out;
  out.grid = oracle::Grid1D::symmetric(spec.center, spec.half_width, spec.points);
  out.t = t;
  const auto xs = out.grid.points();
  const double dx = out.grid.spacing();
  const double hb = p.hbar;

  const std::size_t steps = t == p.t0 ? 0 : static_cast<std::size_t>(std::ceil((t - p.t0) / spec.dt - 1e-9));
  const double dt = steps == 0 ? 0.0 : (t - p.t0) / static_cast<double>(steps);
  out.steps = steps;

  // Resolution guard: the packet's highest relevant wavenumber must be well sampled
  // in space, and its phase must advance by less than ~1 rad per step.
  const double k_max = std::abs(psi0.momentum) / hb + 6.0 * std::sqrt(std::abs(psi0.width));
  if (k_max * dx > 0.5) throw oracle::OracleError("tdse: grid spacing too coarse for the packet spectrum");
  const double m_lo = std::min(classical::mass_at(model, p, p.t0), classical::mass_at(model, p, t));
  const double m_hi = std::max(classical::mass_at(model, p, p.t0), classical::mass_at(model, p, t));
  const double reach = std::abs(psi0.center - spec.center) + 6.0 / std::sqrt(psi0.width.real());
  const double e_scale = hb * hb * k_max * k_max / (2.0 * m_lo) + 0.5 * m_hi * p.omega * p.omega * reach * reach;
  if (dt * e_scale / hb > 1.0) throw oracle::OracleError("tdse: time step too coarse (CFL-equivalent phase limit)");

  out.psi = kernels::sample_packet(psi0, xs, exec);
  if (edge_ratio(out.psi) > 1e-12) throw oracle::OracleError("tdse: initial packet touches the walls; widen the grid");

  if (spec.time_richardson && steps > 0) {
    auto coarse = out.psi;
    crank_nicolson(coarse, xs, model, p, t, steps, exec);
    crank_nicolson(out.psi, xs, model, p, t, 2 * steps, exec);
    for (std::size_t j = 0; j < xs.size(); ++j) out.psi[j] = (4.0 * out.psi[j] - coarse[j]) / 3.0;
  } else {
    crank_nicolson(out.psi, xs, model, p, t, steps, exec);
  }
  if (edge_ratio(out.psi) > 1e-12) throw oracle::OracleError("tdse: boundary leakage; widen the grid");
  return out;
}

}  // namespace memosc::quantum
