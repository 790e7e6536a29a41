#include "memosc/oracle.hpp"

#include <algorithm>
#include <array>

namespace memosc::oracle {

std::vector<double> Grid1D::points() const {
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = at(i);
  return xs;
}

Grid1D Grid1D::symmetric(double center, double half_width, std::size_t n) {
  if (n % 2 == 0) ++n;
  return {center - half_width, center + half_width, n};
}

void GridSpec::validate() const {
  if (points < 3) throw OracleError("grid: at least 3 points required");
  if (!(half_width > 0.0)) throw OracleError("grid: half_width > 0 required");
  if (!(dt > 0.0)) throw OracleError("grid: dt > 0 required");
}

namespace {

template <class T>
T simpson_impl(std::span<const T> f, double h, double edge_tolerance) {
  const std::size_t n = f.size();
  if (n < 3 || n % 2 == 0) throw OracleError("quadrature: odd number of samples >= 3 required");
  double peak = 0.0;
  for (const auto& v : f) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return T{};
  if (std::abs(f.front()) > edge_tolerance * peak || std::abs(f.back()) > edge_tolerance * peak)
    throw OracleError("quadrature: integrand has not decayed at the grid edge; widen the grid");
  T odd{}, even{};
  for (std::size_t i = 1; i + 1 < n; i += 2) odd += f[i];
  for (std::size_t i = 2; i + 1 < n; i += 2) even += f[i];
  return (f.front() + f.back() + 4.0 * odd + 2.0 * even) * (h / 3.0);
}

constexpr std::array<double, 3> d1a2{-0.5, 0.0, 0.5};
constexpr std::array<double, 5> d1a4{1.0 / 12.0, -2.0 / 3.0, 0.0, 2.0 / 3.0, -1.0 / 12.0};
constexpr std::array<double, 3> d2a2{1.0, -2.0, 1.0};
constexpr std::array<double, 5> d2a4{-1.0 / 12.0, 4.0 / 3.0, -5.0 / 2.0, 4.0 / 3.0, -1.0 / 12.0};

template <class T>
std::vector<T> fd_impl(std::span<const T> f, double h, int order, int accuracy) {
  const auto w = stencil(order, accuracy);
  const std::size_t r = w.size() / 2;
  if (f.size() < w.size()) throw OracleError("finite_difference: stencil out of bounds");
  const double scale = order == 1 ? 1.0 / h : 1.0 / (h * h);
  std::vector<T> out(f.size() - 2 * r);
  for (std::size_t i = 0; i < out.size(); ++i) {
    T acc{};
    for (std::size_t k = 0; k < w.size(); ++k) acc += w[k] * f[i + k];
    out[i] = acc * scale;
  }
  return out;
}

}  // namespace

double simpson(std::span<const double> f, double h, double edge_tolerance) {
  return simpson_impl(f, h, edge_tolerance);
}

std::complex<double> simpson(std::span<const std::complex<double>> f, double h, double edge_tolerance) {
  return simpson_impl(f, h, edge_tolerance);
}

std::span<const double> stencil(int order, int accuracy) {
  if (order == 1 && accuracy == 2) return d1a2;
  if (order == 1 && accuracy == 4) return d1a4;
  if (order == 2 && accuracy == 2) return d2a2;
  if (order == 2 && accuracy == 4) return d2a4;
  throw OracleError("finite_difference: order must be 1|2 and accuracy 2|4");
}

std::vector<double> finite_difference(std::span<const double> samples, double h, int order, int accuracy) {
  return fd_impl(samples, h, order, accuracy);
}

std::vector<std::complex<double>> finite_difference(std::span<const std::complex<double>> samples, double h,
                                                    int order, int accuracy) {
  return fd_impl(samples, h, order, accuracy);
}

Field2D<std::complex<double>> finite_difference(const Field2D<std::complex<double>>& field, Axis axis, double h,
                                                int order, int accuracy) {
  const auto w = stencil(order, accuracy);
  const std::size_t r = w.size() / 2;
  const double scale = order == 1 ? 1.0 / h : 1.0 / (h * h);
  const bool along_rows = axis == Axis::Rows;
  const std::size_t extent = along_rows ? field.rows : field.cols;
  if (extent < w.size()) throw OracleError("finite_difference: stencil out of bounds");
  Field2D<std::complex<double>> out(along_rows ? field.rows - 2 * r : field.rows,
                                    along_rows ? field.cols : field.cols - 2 * r);
  for (std::size_t i = 0; i < out.rows; ++i)
    for (std::size_t j = 0; j < out.cols; ++j) {
      std::complex<double> acc{};
      for (std::size_t k = 0; k < w.size(); ++k)
        acc += w[k] * (along_rows ? field(i + k, j) : field(i, j + k));
      out(i, j) = acc * scale;
    }
  return out;
}

}  // namespace memosc::oracle
