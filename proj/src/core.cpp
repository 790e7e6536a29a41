#include "memosc/core.hpp"

#include <cmath>
#include <cstdlib>
#include <string_view>

namespace memosc {

std::string to_string(ModelKind model) {
  switch (model) {
    case ModelKind::NonlocalNew: return "new";
    case ModelKind::CaldirolaKanai: return "ck";
  }
  return "?";
}

ModelKind parse_model(const std::string& name) {
  if (name == "new" || name == "nonlocal") return ModelKind::NonlocalNew;
  if (name == "ck" || name == "caldirola-kanai") return ModelKind::CaldirolaKanai;
  throw std::invalid_argument("unknown model '" + name + "' (expected new|ck)");
}

EvolutionMatrix operator*(const EvolutionMatrix& l, const EvolutionMatrix& r) {
  return {l.xx * r.xx + l.xp * r.px, l.xx * r.xp + l.xp * r.pp,
          l.px * r.xx + l.pp * r.px, l.px * r.xp + l.pp * r.pp};
}

OscillatorParams validate_params(const OscillatorParams& raw, NeedsOmega needs) {
  auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(raw.m0) || !finite(raw.gamma) || !finite(raw.omega) || !finite(raw.hbar) || !finite(raw.t0))
    throw DomainError("params: all fields must be finite");
  if (!(raw.m0 > 0.0)) throw DomainError("params: m0 > 0 required");
  if (!(raw.hbar > 0.0)) throw DomainError("params: hbar > 0 required");
  if (raw.gamma < 0.0) throw DomainError("params: gamma >= 0 required");
  if (raw.omega < 0.0) throw DomainError("params: omega >= 0 required");
  if (needs == NeedsOmega::Yes && !(raw.omega > raw.gamma))
    throw DomainError("params: omega > gamma required (underdamped regime)");
  return raw;
}

DerivedFrequency derived_frequency(const OscillatorParams& p) {
  validate_params(p, NeedsOmega::Yes);
  // (omega - gamma)(omega + gamma) avoids cancellation near critical damping.
  return {std::sqrt((p.omega - p.gamma) * (p.omega + p.gamma))};
}

OscillatorParams restarted(const OscillatorParams& p, double t_mem, double m_ref) {
  OscillatorParams out = p;
  out.t0 = t_mem;
  out.m0 = m_ref;
  return out;
}

namespace tol {
double scale() {
  static const double value = [] {
    const char* env = std::getenv("MEMOSC_TOL_SCALE");
    if (env == nullptr || *env == '\0') return 1.0;
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end == env || !(v > 0.0) || !std::isfinite(v)) return 1.0;
    return v;
  }();
  return value;
}
}  // namespace tol

}  // namespace memosc
