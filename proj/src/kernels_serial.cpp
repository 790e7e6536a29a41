#include "kernels_body.hpp"

namespace memosc::kernels::serial {

ResidualField residual_field(const ResidualInputs& in) {
  body::check_sizes(in);
  ResidualField out{{in.slices.size(), in.xs.size()}, {in.slices.size(), in.xs.size()}};
  for (std::size_t i = 0; i < in.slices.size(); ++i)
    for (std::size_t j = 0; j < in.xs.size(); ++j) body::residual_at(in, i, j, out.residual(i, j), out.modulus(i, j));
  return out;
}

oracle::Field2D<double> density_rows(const DensityRows& in) {
  oracle::Field2D<double> rho(in.center.size(), in.positions.size());
  for (std::size_t i = 0; i < rho.rows; ++i)
    for (std::size_t j = 0; j < rho.cols; ++j) rho(i, j) = body::density_at(in, i, j);
  return rho;
}

void tridiagonal_apply(const Tridiagonal& op, std::span<const std::complex<double>> in,
                       std::span<std::complex<double>> out) {
  for (std::size_t j = 0; j < in.size(); ++j) out[j] = body::tridiagonal_at(op, in, j);
}

std::vector<double> defect_norms(std::span<const DefectTask> tasks) {
  std::vector<double> out(tasks.size());
  for (std::size_t k = 0; k < tasks.size(); ++k) out[k] = body::defect_at(tasks[k]);
  return out;
}

std::vector<std::complex<double>> sample_packet(const quantum::GaussianPacket& psi, std::span<const double> xs) {
  std::vector<std::complex<double>> out(xs.size());
  for (std::size_t j = 0; j < xs.size(); ++j) out[j] = psi(xs[j]);
  return out;
}

}  // namespace memosc::kernels::serial
