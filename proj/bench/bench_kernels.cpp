#include <benchmark/benchmark.h>

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

Exec exec_of(const benchmark::State& state) { return state.range(1) != 0 ? Exec::Parallel : Exec::Serial; }

void label(benchmark::State& state) {
  state.SetLabel(exec_of(state) == Exec::Parallel ? "omp" : "serial");
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ResidualField(benchmark::State& state) {
  OscillatorParams p;
  const double h = 1e-3;
  std::vector<TimeSlice> slices;
  for (double t : linspace(0.2, 1.5, 32)) {
    const auto k = [&](double s) { return quantum::kernel(quantum::KernelVariant::New, s, p); };
    slices.push_back({k(t - 2 * h), k(t - h), k(t), k(t + h), k(t + 2 * h),
                      quantum::hamiltonian_coeffs(quantum::Hamiltonian::NewMass, t, p)});
  }
  const auto xs = linspace(-1.0, 1.0, static_cast<std::size_t>(state.range(0)));
  const ResidualInputs in{slices, xs, 0.3, h, h, 1.0, 2};
  for (auto _ : state) benchmark::DoNotOptimize(residual_field(in, exec_of(state)));
  state.SetLabel(exec_of(state) == Exec::Parallel ? "omp" : "serial");
  state.SetItemsProcessed(state.iterations() * state.range(0) * static_cast<long long>(slices.size()));
}

void BM_DensityRows(benchmark::State& state) {
  const auto xs = linspace(-10.0, 10.0, static_cast<std::size_t>(state.range(0)));
  std::vector<double> center, disp, peak;
  for (double t : linspace(0.0, 4.0, 64)) {
    center.push_back(std::tanh(0.5 * t) / 0.5);
    disp.push_back(1.0 + t);
    peak.push_back(1.0 / std::sqrt(1.0 + t));
  }
  const DensityRows in{xs, center, disp, peak};
  for (auto _ : state) benchmark::DoNotOptimize(density_rows(in, exec_of(state)));
  state.SetLabel(exec_of(state) == Exec::Parallel ? "omp" : "serial");
  state.SetItemsProcessed(state.iterations() * state.range(0) * 64);
}

void BM_TridiagonalApply(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<cplx> lo(n, {1.0, 0.1}), d(n, {10.0, -0.3}), up(n, {1.0, 0.1}), v(n), out(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = {std::sin(1e-3 * j), std::cos(2e-3 * j)};
  const Tridiagonal op{lo, d, up};
  for (auto _ : state) {
    tridiagonal_apply(op, v, out, exec_of(state));
    benchmark::ClobberMemory();
  }
  label(state);
}

void BM_DefectNorms(benchmark::State& state) {
  OscillatorParams p;
  std::vector<DefectTask> tasks;
  for (double t1 : linspace(0.05, 1.95, static_cast<std::size_t>(state.range(0))))
    tasks.push_back({ModelKind::NonlocalNew, {0.0, t1, 2.0}, p});
  for (auto _ : state) benchmark::DoNotOptimize(defect_norms(tasks, exec_of(state)));
  label(state);
}

void BM_SamplePacket(benchmark::State& state) {
  const auto psi = quantum::GaussianPacket::normalized(0.5, 1.0, 1.0);
  const auto xs = linspace(-20.0, 20.0, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sample_packet(psi, xs, exec_of(state)));
  label(state);
}

}  // namespace

BENCHMARK(BM_ResidualField)->ArgsProduct({{256, 2048}, {0, 1}});
BENCHMARK(BM_DensityRows)->ArgsProduct({{1024, 16384}, {0, 1}});
BENCHMARK(BM_TridiagonalApply)->ArgsProduct({{4001, 65536}, {0, 1}});
BENCHMARK(BM_DefectNorms)->ArgsProduct({{64, 1024}, {0, 1}});
BENCHMARK(BM_SamplePacket)->ArgsProduct({{4001, 65536}, {0, 1}});

BENCHMARK_MAIN();
