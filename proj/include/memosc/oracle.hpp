#pragma once

// Independent numerical machinery used to check the closed forms.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "memosc/core.hpp"

namespace memosc::oracle {

class OracleError : public DomainError {
 public:
  using DomainError::DomainError;
};

enum class Method { Rk4 };

struct IntegratorSpec {
  double h = 1e-4;
  Method method = Method::Rk4;
  bool richardson = true;
  double richardson_tolerance = 1e-9;  // max |y_h - y_{h/2}| over recorded points
  std::size_t record_every = 1;
};

template <std::size_t N>
struct Trajectory {
  std::vector<double> times;
  std::vector<std::array<double, N>> states;
  double richardson_error = 0.0;  // 0 when the half-step check is disabled
};

namespace detail {

template <std::size_t N>
std::array<double, N> axpy(const std::array<double, N>& y, double a, const std::array<double, N>& k) {
  std::array<double, N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = y[i] + a * k[i];
  return out;
}

template <std::size_t N, class Rhs>
Trajectory<N> rk4_fixed(Rhs&& rhs, std::array<double, N> y, double t0, double t1, std::size_t steps,
                        std::size_t record_every) {
  Trajectory<N> out;
  const double h = (t1 - t0) / static_cast<double>(steps);
  out.times.push_back(t0);
  out.states.push_back(y);
  for (std::size_t n = 0; n < steps; ++n) {
    const double t = t0 + static_cast<double>(n) * h;
    const auto k1 = rhs(t, y);
    const auto k2 = rhs(t + 0.5 * h, axpy(y, 0.5 * h, k1));
    const auto k3 = rhs(t + 0.5 * h, axpy(y, 0.5 * h, k2));
    const auto k4 = rhs(t + h, axpy(y, h, k3));
    for (std::size_t i = 0; i < N; ++i) {
      y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      if (!std::isfinite(y[i])) throw OracleError("rk4: non-finite state during integration");
    }
    if ((n + 1) % record_every == 0 || n + 1 == steps) {
      out.times.push_back(t0 + static_cast<double>(n + 1) * h);
      out.states.push_back(y);
    }
  }
  return out;
}

}  // namespace detail

/// Fixed-step classical RK4 from t0 to t1. The step is shrunk so that t1 is hit
/// exactly. With spec.richardson the run is repeated at h/2 and the largest
/// disagreement at the recorded points is reported; exceeding the tolerance throws.
template <std::size_t N, class Rhs>
Trajectory<N> rk4_integrate(Rhs&& rhs, const std::array<double, N>& y0, double t0, double t1,
                            const IntegratorSpec& spec) {
  if (!(spec.h > 0.0)) throw OracleError("rk4: h > 0 required");
  if (!(t1 >= t0)) throw OracleError("rk4: t1 >= t0 required");
  if (spec.record_every == 0) throw OracleError("rk4: record_every >= 1 required");
  if (t1 == t0) return Trajectory<N>{{t0}, {y0}, 0.0};
  const auto steps = static_cast<std::size_t>(std::ceil((t1 - t0) / spec.h - 1e-9));
  auto out = detail::rk4_fixed<N>(rhs, y0, t0, t1, steps, spec.record_every);
  if (spec.richardson) {
    const auto fine = detail::rk4_fixed<N>(rhs, y0, t0, t1, 2 * steps, 2 * spec.record_every);
    double err = 0.0;
    for (std::size_t k = 0; k < out.states.size() && k < fine.states.size(); ++k)
      for (std::size_t i = 0; i < N; ++i) err = std::max(err, std::abs(out.states[k][i] - fine.states[k][i]));
    out.richardson_error = err;
    if (err > spec.richardson_tolerance) throw OracleError("rk4: half-step disagreement exceeds tolerance");
  }
  return out;
}

/// Uniform grid on [lo, hi] with n points.
struct Grid1D {
  double lo = -1.0;
  double hi = 1.0;
  std::size_t n = 3;

  [[nodiscard]] double spacing() const { return (hi - lo) / static_cast<double>(n - 1); }
  [[nodiscard]] double at(std::size_t i) const { return lo + static_cast<double>(i) * spacing(); }
  [[nodiscard]] std::vector<double> points() const;
  /// Symmetric grid; an odd point count is forced so Simpson applies.
  static Grid1D symmetric(double center, double half_width, std::size_t n);
};

/// Grid for the time-dependent Schrodinger oracle.
struct GridSpec {
  double half_width = 20.0;
  std::size_t points = 4001;
  double dt = 1e-3;
  double center = 0.0;
  /// Also run with dt/2 and combine (4 psi_{dt/2} - psi_dt)/3, cancelling the dt^2 error.
  /// Not norm-preserving by construction (the combination is not unitary); off by default.
  bool time_richardson = false;

  void validate() const;
};

double simpson(std::span<const double> f, double h, double edge_tolerance = 1e-12);
std::complex<double> simpson(std::span<const std::complex<double>> f, double h, double edge_tolerance = 1e-12);

enum class Axis { Rows, Cols };

/// Row-major samples f(row, col) on a tensor grid.
template <class T>
struct Field2D {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<T> data;

  Field2D() = default;
  Field2D(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
  T& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

/// Central-difference derivative (order 1 or 2, accuracy 2 or 4) at the interior
/// points where the stencil fits: output length is n - 2*(accuracy/2).
std::vector<double> finite_difference(std::span<const double> samples, double h, int order, int accuracy);
std::vector<std::complex<double>> finite_difference(std::span<const std::complex<double>> samples, double h,
                                                    int order, int accuracy);

/// Same stencil applied along one axis of a 2D field; the other extent is preserved.
Field2D<std::complex<double>> finite_difference(const Field2D<std::complex<double>>& field, Axis axis, double h,
                                                int order, int accuracy);

/// Stencil weights for offsets -r..r.
std::span<const double> stencil(int order, int accuracy);

/// Pointwise central difference of a callable.
template <class F>
auto central_difference(F&& f, double x, double h, int order, int accuracy) {
  const auto w = stencil(order, accuracy);
  const int r = static_cast<int>(w.size() / 2);
  using R = decltype(f(x));
  R acc{};
  for (int k = -r; k <= r; ++k) {
    const double wk = w[static_cast<std::size_t>(k + r)];
    if (wk != 0.0) acc += wk * f(x + k * h);
  }
  return acc / (order == 1 ? h : h * h);
}

}  // namespace memosc::oracle
