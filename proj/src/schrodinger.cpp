#include "memosc/schrodinger.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace memosc::quantum {

Hamiltonian native_hamiltonian(KernelVariant variant) {
  switch (variant) {
    case KernelVariant::CaldirolaKanai: return Hamiltonian::CkMass;
    case KernelVariant::Kochan: return Hamiltonian::Appendix;
    default: return Hamiltonian::NewMass;
  }
}

XpHamiltonianCoeffs hamiltonian_coeffs(Hamiltonian h, double t, const OscillatorParams& p) {
  if (h == Hamiltonian::Appendix) return appendix_coeffs(t, p);
  const double m = classical::mass_at(h == Hamiltonian::CkMass ? ModelKind::CaldirolaKanai : ModelKind::NonlocalNew, p, t);
  return {1.0 / m, 0.0, m * p.omega * p.omega};
}

ResidualGrid ResidualGrid::standard(const OscillatorParams& p) {
  ResidualGrid g;
  for (int i = 0; i <= 13; ++i) g.times.push_back(p.t0 + 0.2 + 0.1 * i);
  for (int j = 0; j <= 20; ++j) g.xs.push_back(-1.0 + 0.1 * j);
  return g;
}

double schrodinger_residual(KernelVariant variant, Hamiltonian h, const ResidualGrid& grid, const OscillatorParams& p,
                            double h_t, double h_x, kernels::Exec exec, int time_order) {
  if (time_order != 2 && time_order != 4) throw std::invalid_argument("schrodinger_residual: time_order must be 2 or 4");
  std::vector<kernels::TimeSlice> slices;
  slices.reserve(grid.times.size());
  for (const double t : grid.times) {
    const auto before = kernel(variant, t - h_t, p);
    const auto after = kernel(variant, t + h_t, p);
    if (time_order == 4)
      slices.push_back({kernel(variant, t - 2.0 * h_t, p), before, kernel(variant, t, p), after,
                        kernel(variant, t + 2.0 * h_t, p), hamiltonian_coeffs(h, t, p)});
    else
      slices.push_back({before, before, kernel(variant, t, p), after, after, hamiltonian_coeffs(h, t, p)});
  }
  const kernels::ResidualInputs in{slices, grid.xs, grid.x0, h_t, h_x, p.hbar, time_order};
  const auto field = kernels::residual_field(in, exec);
  const double worst = *std::max_element(field.residual.data.begin(), field.residual.data.end());
  const double scale = *std::max_element(field.modulus.data.begin(), field.modulus.data.end());
  return worst / scale;
}

SchrodingerCheck verify_schrodinger(KernelVariant variant, const ResidualGrid& grid, const OscillatorParams& p,
                                    std::optional<Hamiltonian> h, int time_order) {
  const Hamiltonian ham = h.value_or(native_hamiltonian(variant));
  // h_x follows h_t down to 1e-3 and stays there: the 4th-order x stencil is converged
  // by then, while smaller h_x only adds rounding (eps / h_x^2).
  auto residual = [&](double step) {
    return schrodinger_residual(variant, ham, grid, p, step, std::max(step, 1e-3), kernels::Exec::Parallel, time_order);
  };
  SchrodingerCheck out;
  out.step = 1e-2;
  out.residual = residual(out.step);
  out.history.push_back(out.residual);
  // Halve until the residual stops shrinking (settled, or rounding has taken over).
  for (double step = 0.5 * out.step; step >= 1e-6; step *= 0.5) {
    const double current = residual(step);
    out.history.push_back(current);
    if (current >= out.residual) break;
    const bool settled = out.residual - current < 0.1 * out.residual;
    out.residual = current;
    out.step = step;
    if (settled) break;
  }
  return out;
}

}  // namespace memosc::quantum
