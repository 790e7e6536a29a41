#pragma once

// Per-element bodies shared by the serial and OpenMP loops.

#include <cmath>
#include <stdexcept>

#include "memosc/kernels.hpp"

namespace memosc::kernels::body {

using cplx = std::complex<double>;

inline void check_sizes(const ResidualInputs& in) {
  if (in.xs.empty() || in.slices.empty()) throw std::invalid_argument("residual_field: empty grid");
}

inline void residual_at(const ResidualInputs& in, std::size_t i, std::size_t j, double& residual, double& modulus) {
  const TimeSlice& s = in.slices[i];
  const double x = in.xs[j];
  const double hx = in.h_x;
  const double hb = in.hbar;
  const cplx dk_dt = in.time_order == 4
                         ? (s.before2(x, in.x0) / 12.0 - 2.0 * s.before(x, in.x0) / 3.0 +
                            2.0 * s.after(x, in.x0) / 3.0 - s.after2(x, in.x0) / 12.0) /
                               in.h_t
                         : (s.after(x, in.x0) - s.before(x, in.x0)) / (2.0 * in.h_t);
  const cplx km2 = s.at(x - 2.0 * hx, in.x0);
  const cplx km1 = s.at(x - hx, in.x0);
  const cplx k0 = s.at(x, in.x0);
  const cplx kp1 = s.at(x + hx, in.x0);
  const cplx kp2 = s.at(x + 2.0 * hx, in.x0);
  const cplx d1 = (km2 / 12.0 - 2.0 * km1 / 3.0 + 2.0 * kp1 / 3.0 - kp2 / 12.0) / hx;
  const cplx d2 = (-km2 / 12.0 + 4.0 * km1 / 3.0 - 2.5 * k0 + 4.0 * kp1 / 3.0 - kp2 / 12.0) / (hx * hx);
  const cplx I{0.0, 1.0};
  const cplx hk = -0.5 * hb * hb * s.ham.mu * d2 - I * hb * s.ham.nu * (x * d1 + 0.5 * k0) +
                  0.5 * s.ham.lambda_coef * x * x * k0;
  residual = std::abs(I * hb * dk_dt - hk);
  modulus = std::abs(k0);
}

inline double density_at(const DensityRows& in, std::size_t i, std::size_t j) {
  const double d = in.positions[j] - in.center[i];
  return in.peak[i] * std::exp(-2.0 * d * d / in.dispersion[i]);
}

inline cplx tridiagonal_at(const Tridiagonal& op, std::span<const cplx> v, std::size_t j) {
  cplx acc = op.diag[j] * v[j];
  if (j > 0) acc += op.lower[j] * v[j - 1];
  if (j + 1 < v.size()) acc += op.upper[j] * v[j + 1];
  return acc;
}

inline double defect_at(const DefectTask& t) {
  return classical::composition_defect(t.model, t.times[0], t.times[1], t.times[2], t.params).norm;
}

}  // namespace memosc::kernels::body
