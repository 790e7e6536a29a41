#pragma once

// Data-parallel inner loops. Each routine exists twice: a serial reference in
// memosc::kernels::serial and an OpenMP version in memosc::kernels::omp. The
// per-element arithmetic is shared, so both produce bit-identical results.

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "memosc/classical.hpp"
#include "memosc/oracle.hpp"
#include "memosc/quantum.hpp"

namespace memosc::kernels {

enum class Exec { Serial, Parallel };

/// Kernels at t - h, t, t + h and the Hamiltonian coefficients at t.
/// Kernels at t - 2h, t - h, t, t + h, t + 2h.
struct TimeSlice {
  quantum::QuadraticKernel before2;
  quantum::QuadraticKernel before;
  quantum::QuadraticKernel at;
  quantum::QuadraticKernel after;
  quantum::QuadraticKernel after2;
  quantum::XpHamiltonianCoeffs ham;
};

struct ResidualInputs {
  std::span<const TimeSlice> slices;
  std::span<const double> xs;
  double x0 = 0.0;
  double h_t = 1e-3;
  double h_x = 1e-3;
  double hbar = 1.0;
  int time_order = 2;  ///< 2: uses before/after; 4: also before2/after2
};

/// |i hbar dK/dt - H K| (rows: slices, cols: xs) and |K| at the same points.
struct ResidualField {
  oracle::Field2D<double> residual;
  oracle::Field2D<double> modulus;
};

/// Gaussian rows rho(i, j) = peak_i exp(-2 (x_j - center_i)^2 / dispersion_i).
struct DensityRows {
  std::span<const double> positions;
  std::span<const double> center;
  std::span<const double> dispersion;
  std::span<const double> peak;
};

/// Row j: lower[j] v[j-1] + diag[j] v[j] + upper[j] v[j+1]; lower[0], upper[n-1] unused.
struct Tridiagonal {
  std::span<const std::complex<double>> lower;
  std::span<const std::complex<double>> diag;
  std::span<const std::complex<double>> upper;
};

struct DefectTask {
  ModelKind model;
  std::array<double, 3> times;
  OscillatorParams params;
};

namespace serial {
ResidualField residual_field(const ResidualInputs& in);
oracle::Field2D<double> density_rows(const DensityRows& in);
void tridiagonal_apply(const Tridiagonal& op, std::span<const std::complex<double>> in,
                       std::span<std::complex<double>> out);
std::vector<double> defect_norms(std::span<const DefectTask> tasks);
std::vector<std::complex<double>> sample_packet(const quantum::GaussianPacket& psi, std::span<const double> xs);
}  // namespace serial

namespace omp {
ResidualField residual_field(const ResidualInputs& in);
oracle::Field2D<double> density_rows(const DensityRows& in);
void tridiagonal_apply(const Tridiagonal& op, std::span<const std::complex<double>> in,
                       std::span<std::complex<double>> out);
std::vector<double> defect_norms(std::span<const DefectTask> tasks);
std::vector<std::complex<double>> sample_packet(const quantum::GaussianPacket& psi, std::span<const double> xs);
}  // namespace omp

inline ResidualField residual_field(const ResidualInputs& in, Exec e) {
  return e == Exec::Parallel ? omp::residual_field(in) : serial::residual_field(in);
}
inline oracle::Field2D<double> density_rows(const DensityRows& in, Exec e) {
  return e == Exec::Parallel ? omp::density_rows(in) : serial::density_rows(in);
}
inline void tridiagonal_apply(const Tridiagonal& op, std::span<const std::complex<double>> in,
                              std::span<std::complex<double>> out, Exec e) {
  e == Exec::Parallel ? omp::tridiagonal_apply(op, in, out) : serial::tridiagonal_apply(op, in, out);
}
inline std::vector<double> defect_norms(std::span<const DefectTask> tasks, Exec e) {
  return e == Exec::Parallel ? omp::defect_norms(tasks) : serial::defect_norms(tasks);
}
inline std::vector<std::complex<double>> sample_packet(const quantum::GaussianPacket& psi,
                                                       std::span<const double> xs, Exec e) {
  return e == Exec::Parallel ? omp::sample_packet(psi, xs) : serial::sample_packet(psi, xs);
}

/// Number of OpenMP threads available (1 without OpenMP).
int max_threads();

}  // namespace memosc::kernels
