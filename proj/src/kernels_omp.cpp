#include <exception>

#include "kernels_body.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace memosc::kernels {

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace omp {

namespace {
using Index = long long;  // OpenMP loop variables must be signed on older runtimes
}

ResidualField residual_field(const ResidualInputs& in) {
  body::check_sizes(in);
  ResidualField out{{in.slices.size(), in.xs.size()}, {in.slices.size(), in.xs.size()}};
  const auto rows = static_cast<Index>(in.slices.size());
  const auto cols = static_cast<Index>(in.xs.size());
#pragma omp parallel for collapse(2) schedule(static)
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) {
      const auto r = static_cast<std::size_t>(i);
      const auto c = static_cast<std::size_t>(j);
      body::residual_at(in, r, c, out.residual(r, c), out.modulus(r, c));
    }
  return out;
}

oracle::Field2D<double> density_rows(const DensityRows& in) {
  oracle::Field2D<double> rho(in.center.size(), in.positions.size());
  const auto rows = static_cast<Index>(rho.rows);
  const auto cols = static_cast<Index>(rho.cols);
#pragma omp parallel for collapse(2) schedule(static)
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) {
      const auto r = static_cast<std::size_t>(i);
      const auto c = static_cast<std::size_t>(j);
      rho(r, c) = body::density_at(in, r, c);
    }
  return rho;
}

void tridiagonal_apply(const Tridiagonal& op, std::span<const std::complex<double>> in,
                       std::span<std::complex<double>> out) {
  const auto n = static_cast<Index>(in.size());
#pragma omp parallel for schedule(static) if (n > 4096)
  for (Index j = 0; j < n; ++j) out[static_cast<std::size_t>(j)] = body::tridiagonal_at(op, in, static_cast<std::size_t>(j));
}

std::vector<double> defect_norms(std::span<const DefectTask> tasks) {
  std::vector<double> out(tasks.size());
  const auto n = static_cast<Index>(tasks.size());
  // Exceptions may not cross the parallel region; keep the first and rethrow.
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 4)
  for (Index k = 0; k < n; ++k) {
    try {
      out[static_cast<std::size_t>(k)] = body::defect_at(tasks[static_cast<std::size_t>(k)]);
    } catch (...) {
#pragma omp critical(memosc_defect_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

std::vector<std::complex<double>> sample_packet(const quantum::GaussianPacket& psi, std::span<const double> xs) {
  std::vector<std::complex<double>> out(xs.size());
  const auto n = static_cast<Index>(xs.size());
#pragma omp parallel for schedule(static) if (n > 4096)
  for (Index j = 0; j < n; ++j) out[static_cast<std::size_t>(j)] = psi(xs[static_cast<std::size_t>(j)]);
  return out;
}

}  // namespace omp
}  // namespace memosc::kernels
