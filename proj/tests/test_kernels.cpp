#include <doctest.h>

#include <complex>
#include <vector>

#include "memosc/kernels.hpp"
#include "memosc/schrodinger.hpp"

using namespace memosc;
using namespace memosc::kernels;
using cplx = std::complex<double>;

namespace {

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return out;
}

std::vector<TimeSlice> slices(const OscillatorParams& p, double h) {
  using quantum::KernelVariant;
  std::vector<TimeSlice> out;
  for (double t : linspace(0.3, 1.4, 23)) {
    const auto k = [&](double s) { return quantum::kernel(KernelVariant::New, s, p); };
    out.push_back({k(t - 2 * h), k(t - h), k(t), k(t + h), k(t + 2 * h),
                   quantum::hamiltonian_coeffs(quantum::Hamiltonian::NewMass, t, p)});
  }
  return out;
}

}  // namespace

TEST_CASE("residual field") {
  OscillatorParams p;
  const auto sl = slices(p, 1e-3);
  const auto xs = linspace(-1.0, 1.0, 101);
  for (int order : {2, 4}) {
    ResidualInputs in{sl, xs, 0.3, 1e-3, 1e-3, 1.0, order};
    const auto s = serial::residual_field(in);
    const auto o = omp::residual_field(in);
    CHECK(s.residual.rows == sl.size());
    CHECK(s.residual.cols == xs.size());
    CHECK(s.residual.data == o.residual.data);
    CHECK(s.modulus.data == o.modulus.data);
  }
}

TEST_CASE("density rows") {
  const auto xs = linspace(-5.0, 5.0, 257);
  const std::vector<double> center{0.0, 0.5, 1.0}, disp{1.0, 2.0, 3.0}, peak{0.8, 0.6, 0.4};
  const DensityRows in{xs, center, disp, peak};
  const auto s = serial::density_rows(in);
  CHECK(s.data == omp::density_rows(in).data);
  CHECK(s(1, 128) == doctest::Approx(0.6 * std::exp(-2.0 * 0.25 / 2.0)));
}

TEST_CASE("tridiagonal apply") {
  const std::size_t n = 513;
  std::vector<cplx> lo(n), d(n), up(n), v(n);
  for (std::size_t j = 0; j < n; ++j) {
    lo[j] = {1.0, 0.1 * j};
    d[j] = {10.0, -0.5};
    up[j] = {1.0, -0.2};
    v[j] = {std::sin(0.01 * j), std::cos(0.03 * j)};
  }
  std::vector<cplx> a(n), b(n);
  const Tridiagonal op{lo, d, up};
  serial::tridiagonal_apply(op, v, a);
  omp::tridiagonal_apply(op, v, b);
  CHECK(a == b);
  CHECK(a[0] == d[0] * v[0] + up[0] * v[1]);
  CHECK(a[n - 1] == lo[n - 1] * v[n - 2] + d[n - 1] * v[n - 1]);
}

TEST_CASE("defect norms") {
  OscillatorParams p;
  std::vector<DefectTask> tasks;
  for (double t1 : linspace(0.1, 1.9, 19)) {
    tasks.push_back({ModelKind::NonlocalNew, {0.0, t1, 2.0}, p});
    tasks.push_back({ModelKind::CaldirolaKanai, {0.0, t1, 2.0}, p});
  }
  const auto s = serial::defect_norms(tasks);
  CHECK(s == omp::defect_norms(tasks));
  CHECK(s[0] == classical::composition_defect(ModelKind::NonlocalNew, 0.0, 0.1, 2.0, p).norm);
}

TEST_CASE("sample packet") {
  const auto psi = quantum::GaussianPacket::normalized(0.2, 1.5, 0.7);
  const auto xs = linspace(-6.0, 6.0, 1001);
  const auto s = serial::sample_packet(psi, xs);
  CHECK(s == omp::sample_packet(psi, xs));
  CHECK(s[500] == psi(xs[500]));
}

TEST_CASE("dispatch") {
  const auto psi = quantum::GaussianPacket::normalized(0.0, 0.0, 1.0);
  const auto xs = linspace(-1.0, 1.0, 11);
  CHECK(sample_packet(psi, xs, Exec::Serial) == sample_packet(psi, xs, Exec::Parallel));
  CHECK(max_threads() >= 1);
}
