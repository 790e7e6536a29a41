#include "memosc/scenario.hpp"

#include <charconv>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "memosc/oracle.hpp"
#include "memosc/schrodinger.hpp"

namespace memosc::cli {

namespace {

using quantum::KernelVariant;

const std::vector<std::string> kScenarios = {"classical-trajectory", "classical-defect", "packet-evolution",
                                             "kernel-check",         "quantum-defect",   "asymptotics",
                                             "appendix-check"};

std::string restart_name(classical::MassRestart r) {
  return r == classical::MassRestart::Physical ? "physical" : "initial";
}

classical::MassRestart parse_restart(const std::string& s) {
  if (s == "physical") return classical::MassRestart::Physical;
  if (s == "initial") return classical::MassRestart::Initial;
  throw ConfigError("restart_mass must be physical|initial, got '" + s + "'");
}

template <class T>
T field(const json& obj, const char* key, T fallback) {
  if (!obj.contains(key) || obj.at(key).is_null()) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config field '") + key + "' has the wrong type");
  }
}

std::optional<double> optional_number(const json& obj, const char* key) {
  if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
  if (!obj.at(key).is_number()) throw ConfigError(std::string("config field '") + key + "' must be a number");
  return obj.at(key).get<double>();
}

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError("unknown config key '" + where + key + "'");
  }
}

json section(const json& doc, const char* key) {
  if (!doc.contains(key)) return json::object();
  if (!doc.at(key).is_object()) throw ConfigError(std::string("config section '") + key + "' must be an object");
  return doc.at(key);
}

}  // namespace

const std::vector<std::string>& scenario_names() { return kScenarios; }

ScenarioConfig config_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(doc, {"scenario", "name", "model", "kernel", "params", "time", "state", "packet", "restart_mass", "out"},
                 "");
  ScenarioConfig cfg;
  cfg.scenario = field<std::string>(doc, "scenario", cfg.scenario);
  cfg.name = field<std::string>(doc, "name", "");
  try {
    cfg.model = parse_model(field<std::string>(doc, "model", "new"));
    cfg.kernel = quantum::parse_variant(field<std::string>(doc, "kernel", "new"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const json params = section(doc, "params");
  reject_unknown(params, {"m0", "gamma", "omega", "hbar", "t0"}, "params.");
  cfg.params.m0 = field<double>(params, "m0", cfg.params.m0);
  cfg.params.gamma = field<double>(params, "gamma", cfg.params.gamma);
  cfg.params.omega = field<double>(params, "omega", cfg.params.omega);
  cfg.params.hbar = field<double>(params, "hbar", cfg.params.hbar);
  cfg.params.t0 = field<double>(params, "t0", cfg.params.t0);
  const json time = section(doc, "time");
  reject_unknown(time, {"t_end", "steps", "t1", "t2"}, "time.");
  cfg.t_end = optional_number(time, "t_end");
  cfg.t1 = optional_number(time, "t1");
  cfg.t2 = optional_number(time, "t2");
  const auto steps = field<long long>(time, "steps", static_cast<long long>(cfg.steps));
  if (steps < 1) throw ConfigError("time.steps must be >= 1");
  cfg.steps = static_cast<std::size_t>(steps);
  const json state = section(doc, "state");
  reject_unknown(state, {"x0", "p0"}, "state.");
  cfg.state.x = field<double>(state, "x0", cfg.state.x);
  cfg.state.p = field<double>(state, "p0", cfg.state.p);
  const json packet = section(doc, "packet");
  reject_unknown(packet, {"center", "momentum", "sigma"}, "packet.");
  cfg.packet_center = field<double>(packet, "center", cfg.packet_center);
  cfg.packet_momentum = field<double>(packet, "momentum", cfg.packet_momentum);
  cfg.packet_sigma = field<double>(packet, "sigma", cfg.packet_sigma);
  cfg.restart = parse_restart(field<std::string>(doc, "restart_mass", "physical"));
  cfg.out_dir = field<std::string>(doc, "out", cfg.out_dir);
  return cfg;
}

json to_json(const ScenarioConfig& cfg) {
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  return json{{"scenario", cfg.scenario},
              {"name", cfg.name.empty() ? cfg.scenario : cfg.name},
              {"model", to_string(cfg.model)},
              {"kernel", quantum::to_string(cfg.kernel)},
              {"params",
               {{"m0", cfg.params.m0},
                {"gamma", cfg.params.gamma},
                {"omega", cfg.params.omega},
                {"hbar", cfg.params.hbar},
                {"t0", cfg.params.t0}}},
              {"time", {{"t_end", opt(cfg.t_end)}, {"steps", cfg.steps}, {"t1", opt(cfg.t1)}, {"t2", opt(cfg.t2)}}},
              {"state", {{"x0", cfg.state.x}, {"p0", cfg.state.p}}},
              {"packet", {{"center", cfg.packet_center}, {"momentum", cfg.packet_momentum}, {"sigma", cfg.packet_sigma}}},
              {"restart_mass", restart_name(cfg.restart)},
              {"out", cfg.out_dir}};
}

std::string resolve_key(const std::string& key) {
  static const std::vector<std::pair<std::string, std::string>> aliases = {
      {"m0", "params.m0"},     {"gamma", "params.gamma"}, {"omega", "params.omega"}, {"hbar", "params.hbar"},
      {"t0", "params.t0"},     {"t_end", "time.t_end"},   {"steps", "time.steps"},   {"t1", "time.t1"},
      {"t2", "time.t2"},       {"x0", "state.x0"},        {"p0", "state.p0"},        {"sigma", "packet.sigma"},
      {"center", "packet.center"}, {"momentum", "packet.momentum"}};
  for (const auto& [alias, path] : aliases)
    if (key == alias) return path;
  return key;
}

void apply_override(json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("--set expects key=value, got '" + assignment + "'");
  const std::string path = resolve_key(assignment.substr(0, eq));
  const std::string raw = assignment.substr(eq + 1);
  json value;
  try {
    value = json::parse(raw);
  } catch (const json::exception&) {
    value = raw;  // bare string such as model=ck
  }
  json* node = &doc;
  std::size_t start = 0;
  while (true) {
    const auto dot = path.find('.', start);
    const std::string part = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (part.empty()) throw ConfigError("malformed key '" + path + "'");
    if (dot == std::string::npos) {
      (*node)[part] = value;
      break;
    }
    if (!node->contains(part)) (*node)[part] = json::object();
    node = &(*node)[part];
    if (!node->is_object()) throw ConfigError("key '" + path + "' descends into a non-object");
    start = dot + 1;
  }
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void CsvTable::add(std::vector<double> row) {
  if (row.size() != header.size()) throw std::logic_error("csv: row width does not match header");
  rows.push_back(std::move(row));
}

std::string CsvTable::str() const {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  return out;
}

Check make_check(std::string name, double value, double tolerance, std::string relation) {
  Check c{std::move(name), value, tolerance, std::move(relation), false};
  c.passed = c.relation == ">" ? value > tolerance : value <= tolerance;
  return c;
}

json ResultRecord::to_json() const {
  json checks_json = json::array();
  for (const auto& c : checks)
    checks_json.push_back(
        {{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"relation", c.relation}, {"passed", c.passed}});
  json out{{"scenario", scenario}, {"name", name}, {"config", config}, {"outputs", outputs}, {"checks", checks_json},
           {"passed", passed}, {"exit_code", exit_code}};
  if (!error.empty()) out["error"] = error;
  return out;
}

namespace {

struct Resolved {
  ScenarioConfig cfg;
  double t0;
  double t1;
  double t2;
  double t_end;
};

double omega_of(const OscillatorParams& p) { return derived_frequency(p).Omega; }

double default_t_end(const ScenarioConfig& cfg) {
  const auto& p = cfg.params;
  if (cfg.scenario == "classical-trajectory") return p.t0 + 10.0 / p.gamma;
  if (cfg.scenario == "asymptotics") return p.t0 + 20.0 / p.gamma;
  if (cfg.scenario == "classical-defect") return p.t0 + 10.0 / p.gamma;
  if (cfg.scenario == "packet-evolution" && cfg.kernel == KernelVariant::PureDamping) return p.t0 + 10.0 / p.gamma;
  // quantum scenarios stay inside the first focal interval
  return p.t0 + 0.9 * std::numbers::pi / omega_of(p);
}

Resolved resolve(ScenarioConfig cfg) {
  bool known = false;
  for (const auto& s : kScenarios) known = known || s == cfg.scenario;
  if (!known) throw ConfigError("unknown scenario '" + cfg.scenario + "'");
  if (cfg.name.empty()) cfg.name = cfg.scenario;
  if (cfg.scenario == "asymptotics") cfg.params.omega = 0.0;
  validate_params(cfg.params);
  if (cfg.params.gamma <= 0.0 &&
      (cfg.scenario == "classical-trajectory" || cfg.scenario == "asymptotics" || cfg.scenario == "classical-defect"))
    throw DomainError("params: gamma > 0 required for scenario " + cfg.scenario);
  if (!cfg.t1) cfg.t1 = cfg.params.t0 + 1.0;
  if (!cfg.t2) cfg.t2 = cfg.params.t0 + 2.0;
  if (!cfg.t_end) cfg.t_end = default_t_end(cfg);
  if (!(*cfg.t_end > cfg.params.t0)) throw ConfigError("time.t_end must exceed params.t0");
  return {cfg, cfg.params.t0, *cfg.t1, *cfg.t2, *cfg.t_end};
}

double time_at(const Resolved& r, std::size_t i, double lo) {
  return lo + (r.t_end - lo) * static_cast<double>(i) / static_cast<double>(r.cfg.steps);
}

quantum::GaussianPacket packet_of(const ScenarioConfig& cfg) {
  return quantum::GaussianPacket::normalized(cfg.packet_center, cfg.packet_momentum, cfg.packet_sigma, cfg.params.hbar);
}

void classical_trajectory(const Resolved& r, ResultRecord& rec) {
  const auto& p = r.cfg.params;
  const ModelKind model = r.cfg.model;
  const double tau = r.t_end - r.t0;
  const std::size_t per_row = (100000 + r.cfg.steps - 1) / r.cfg.steps;
  oracle::IntegratorSpec spec;
  spec.h = tau / static_cast<double>(per_row * r.cfg.steps);
  spec.record_every = per_row;
  const std::array<double, 2> y0{r.cfg.state.x, r.cfg.state.p / p.m0};
  auto rhs = [&](double t, const std::array<double, 2>& y) {
    return std::array<double, 2>{y[1], classical::newton_rhs(model, t, y, p)};
  };
  const auto traj = oracle::rk4_integrate<2>(rhs, y0, r.t0, r.t_end, spec);

  rec.series.header = {"t", "x", "p", "x_rk4", "p_rk4", "abs_err"};
  double worst = 0.0;
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const double t = traj.times[k];
    const PhaseState s = classical::evolve_state(model, r.cfg.state, t, p);
    const double m = classical::mass_at(model, p, t);
    const auto& y = traj.states[k];
    const double err = std::max(std::abs(s.x - y[0]), std::abs(s.p / m - y[1]));
    worst = std::max(worst, err);
    rec.series.add({t, s.x, s.p, y[0], m * y[1], err});
  }
  rec.outputs["max_abs_err"] = worst;
  rec.outputs["rk4_step"] = spec.h;
  rec.outputs["rk4_richardson_error"] = traj.richardson_error;
  rec.outputs["abs_err_definition"] = "max(|x - x_rk4|, |p/m(t) - p_rk4/m(t)|)";
  rec.checks.push_back(make_check("rk4_agreement", worst, tol::scaled(tol::oracle)));
}

void classical_defect(const Resolved& r, ResultRecord& rec) {
  const auto& p = r.cfg.params;
  auto record_matrix = [](const EvolutionMatrix& m) { return json{{"xx", m.xx}, {"xp", m.xp}, {"px", m.px}, {"pp", m.pp}}; };
  const auto d_new = classical::composition_defect(ModelKind::NonlocalNew, r.t0, r.t1, r.t2, p, r.cfg.restart);
  const auto d_ck = classical::composition_defect(ModelKind::CaldirolaKanai, r.t0, r.t1, r.t2, p, r.cfg.restart);
  const auto& chosen = r.cfg.model == ModelKind::NonlocalNew ? d_new : d_ck;
  rec.outputs["defect_norm"] = chosen.norm;
  rec.outputs["defect_matrix"] = record_matrix(chosen.defect_matrix);
  rec.outputs["defect_norm_new"] = d_new.norm;
  rec.outputs["defect_norm_ck"] = d_ck.norm;
  if (r.cfg.restart == classical::MassRestart::Physical)
    rec.checks.push_back(make_check("ck_local_composition", d_ck.norm, tol::scaled(tol::analytic)));
  rec.series.header = {"t2", "defect_norm_new", "defect_norm_ck"};
  const double lo = std::max(r.t1, r.t0);
  for (std::size_t i = 0; i <= r.cfg.steps; ++i) {
    const double t2 = time_at(r, i, lo);
    rec.series.add({t2, classical::composition_defect(ModelKind::NonlocalNew, r.t0, r.t1, t2, p, r.cfg.restart).norm,
                    classical::composition_defect(ModelKind::CaldirolaKanai, r.t0, r.t1, t2, p, r.cfg.restart).norm});
  }
}

void packet_evolution(const Resolved& r, ResultRecord& rec) {
  const auto& p = r.cfg.params;
  const auto variant = r.cfg.kernel;
  if (variant == KernelVariant::PureDamping && p.omega != 0.0)
    throw DomainError("packet-evolution: pure-damping kernel requires omega = 0");
  const auto psi0 = packet_of(r.cfg);
  const ModelKind model = quantum::model_of(variant);
  const bool closed = variant == KernelVariant::PureDamping;
  rec.series.header = {"t", "center", "momentum", "dispersion", "norm", "classical_x"};
  if (closed) {
    rec.series.header.push_back("closed_center");
    rec.series.header.push_back("closed_dispersion");
  }
  double worst_norm = 0.0, worst_ehrenfest = 0.0, worst_closed = 0.0;
  for (std::size_t i = 0; i <= r.cfg.steps; ++i) {
    const double t = time_at(r, i, r.t0);
    const auto psi = t == r.t0 ? psi0 : quantum::apply_kernel(quantum::kernel(variant, t, p), psi0);
    const PhaseState s0{psi0.center, psi0.momentum};
    const PhaseState cl = closed ? classical::pure_damping_matrix(model, t, p).apply(s0)
                                 : classical::evolve_state(model, s0, t, p);
    worst_norm = std::max(worst_norm, std::abs(psi.norm_squared() - 1.0));
    worst_ehrenfest = std::max(worst_ehrenfest, std::abs(psi.center - cl.x));
    std::vector<double> row{t, psi.center, psi.momentum, psi.dispersion(), psi.norm_squared(), cl.x};
    if (closed) {
      const double cc = quantum::pure_damping_center(model, psi0, t, p);
      const double cd = quantum::pure_damping_dispersion(model, psi0.dispersion(), t, p);
      worst_closed = std::max({worst_closed, std::abs(cc - psi.center), std::abs(cd - psi.dispersion()) / cd});
      row.push_back(cc);
      row.push_back(cd);
    }
    rec.series.add(std::move(row));
  }
  rec.checks.push_back(make_check("unitarity", worst_norm, tol::scaled(tol::analytic)));
  rec.checks.push_back(make_check("ehrenfest_center", worst_ehrenfest, tol::scaled(1e-8)));
  if (closed) rec.checks.push_back(make_check("closed_form_density", worst_closed, tol::scaled(tol::analytic)));
}

void kernel_check(const Resolved& r, ResultRecord& rec) {
  const auto& p = r.cfg.params;
  const auto variant = r.cfg.kernel;
  if (variant == KernelVariant::Composed) throw ConfigError("kernel-check: choose a closed-form kernel");
  rec.series.header = {"t", "a", "b", "c", "norm_re", "norm_im", "van_vleck_residual"};
  double worst_vv = 0.0;
  for (std::size_t i = 1; i <= r.cfg.steps; ++i) {
    const double t = time_at(r, i, r.t0);
    const auto k = quantum::kernel(variant, t, p);
    const double vv = std::abs(std::norm(k.norm) - std::abs(k.b.real()) / (2.0 * std::numbers::pi * p.hbar)) /
                      std::norm(k.norm);
    worst_vv = std::max(worst_vv, vv);
    rec.series.add({t, k.a.real(), k.b.real(), k.c.real(), k.norm.real(), k.norm.imag(), vv});
  }
  rec.checks.push_back(make_check("van_vleck", worst_vv, tol::scaled(tol::analytic)));
  const auto grid = quantum::ResidualGrid::standard(p);
  const auto sch = quantum::verify_schrodinger(variant, grid, p);
  rec.outputs["schrodinger_step"] = sch.step;
  rec.outputs["schrodinger_history"] = sch.history;
  rec.checks.push_back(make_check("schrodinger_residual", sch.residual, tol::scaled(1e-5)));
  if (variant == KernelVariant::Kochan) {
    rec.outputs["kochan_vs_mass_hamiltonian"] =
        quantum::verify_schrodinger(variant, grid, p, quantum::Hamiltonian::NewMass).residual;
  }
}

void quantum_defect(const Resolved& r, ResultRecord& rec) {
  const auto& p = r.cfg.params;
  const auto variant = r.cfg.kernel;
  const auto psi_ref = packet_of(r.cfg);
  const auto d = quantum::quantum_composition_defect(variant, r.t0, r.t1, r.t2, p, r.cfg.restart, &psi_ref);
  rec.outputs["coefficient_distance"] = d.coefficient_distance;
  rec.outputs["norm_modulus_defect"] = d.norm_modulus_defect;
  rec.outputs["norm_phase_defect"] = d.norm_phase_defect;
  rec.outputs["density_defect"] = d.density_defect;
  if (variant == KernelVariant::CaldirolaKanai && r.cfg.restart == classical::MassRestart::Physical) {
    const double tol = tol::scaled(1e-9);
    rec.checks.push_back(make_check("ck_coefficients", d.coefficient_distance, tol));
    rec.checks.push_back(make_check("ck_norm_modulus", d.norm_modulus_defect, tol));
    rec.checks.push_back(make_check("ck_norm_phase", d.norm_phase_defect, tol));
    rec.checks.push_back(make_check("ck_density", d.density_defect, tol));
  }
  rec.series.header = {"t2", "coefficient_distance", "density_defect"};
  for (std::size_t i = 0; i <= r.cfg.steps; ++i) {
    const double t2 = time_at(r, i, r.t1);
    if (t2 <= r.t0) continue;
    const auto di = quantum::quantum_composition_defect(variant, r.t0, r.t1, t2, p, r.cfg.restart, &psi_ref);
    rec.series.add({t2, di.coefficient_distance, di.density_defect});
  }
}

void asymptotics(const Resolved& r, ResultRecord& rec) {
  const auto& p = r.cfg.params;
  const auto psi0 = packet_of(r.cfg);
  const double sigma = psi0.dispersion();
  using classical::asymptotic_state;
  const PhaseState s0 = r.cfg.state;
  const PhaseState a_new = asymptotic_state(ModelKind::NonlocalNew, s0, p);
  const PhaseState a_ck = asymptotic_state(ModelKind::CaldirolaKanai, s0, p);
  rec.outputs["x_asympt_new"] = a_new.x;
  rec.outputs["x_asympt_ck"] = a_ck.x;
  rec.outputs["p_asympt"] = a_new.p;
  rec.outputs["packet_center_asympt_new"] = quantum::asymptotic_center(ModelKind::NonlocalNew, psi0, p);
  rec.outputs["packet_center_asympt_ck"] = quantum::asymptotic_center(ModelKind::CaldirolaKanai, psi0, p);
  rec.outputs["sigma_asympt_new"] = quantum::asymptotic_dispersion(ModelKind::NonlocalNew, sigma, p);
  rec.outputs["sigma_asympt_ck"] = quantum::asymptotic_dispersion(ModelKind::CaldirolaKanai, sigma, p);
  rec.outputs["sigma_asympt_printed"] =
      quantum::asymptotic_dispersion(ModelKind::NonlocalNew, sigma, p, quantum::DispersionFormula::Printed);

  rec.series.header = {"t", "x_new", "x_ck", "sigma_new", "sigma_ck", "sigma_new_printed"};
  for (std::size_t i = 0; i <= r.cfg.steps; ++i) {
    const double t = time_at(r, i, r.t0);
    rec.series.add({t, classical::pure_damping_matrix(ModelKind::NonlocalNew, t, p).apply(s0).x,
                    classical::pure_damping_matrix(ModelKind::CaldirolaKanai, t, p).apply(s0).x,
                    quantum::pure_damping_dispersion(ModelKind::NonlocalNew, sigma, t, p),
                    quantum::pure_damping_dispersion(ModelKind::CaldirolaKanai, sigma, t, p),
                    quantum::pure_damping_dispersion(ModelKind::NonlocalNew, sigma, t, p,
                                                     quantum::DispersionFormula::Printed)});
  }
  // Convergence at t_end inside the exponential envelope.
  const double decay = std::exp(-2.0 * p.gamma * (r.t_end - r.t0));
  const double scale = std::abs(s0.p) / (p.m0 * p.gamma);
  const double x_new = classical::pure_damping_matrix(ModelKind::NonlocalNew, r.t_end, p).apply(s0).x;
  const double x_ck = classical::pure_damping_matrix(ModelKind::CaldirolaKanai, r.t_end, p).apply(s0).x;
  rec.checks.push_back(make_check("new_within_envelope", std::abs(x_new - a_new.x), 2.0 * scale * decay + 1e-15));
  rec.checks.push_back(make_check("ck_within_envelope", std::abs(x_ck - a_ck.x), 0.5 * scale * decay + 1e-15));
}

void appendix_check(const Resolved& r, ResultRecord& rec) {
  const auto& p = r.cfg.params;
  rec.series.header = {"t", "mu", "nu", "lambda", "beta"};
  double worst_identity = 0.0;
  for (std::size_t i = 1; i <= r.cfg.steps; ++i) {
    const double t = time_at(r, i, r.t0);
    const auto c = quantum::appendix_coeffs(t, p);
    const double beta = quantum::b_factor_phase(t, p);
    const double m = classical::mass_at(ModelKind::NonlocalNew, p, t);
    const double h = 1e-5;
    if (t - h > p.t0) {
      const double beta_rate = (quantum::b_factor_phase(t + h, p) - quantum::b_factor_phase(t - h, p)) / (2.0 * h);
      const double lam_scale = std::max(1.0, std::abs(c.lambda_coef));
      worst_identity = std::max({worst_identity, std::abs(c.nu - beta / m),
                                 std::abs(c.lambda_coef - (beta * beta / m + m * p.omega * p.omega + beta_rate)) /
                                     lam_scale});
    }
    rec.series.add({t, c.mu, c.nu, c.lambda_coef, beta});
  }
  rec.outputs["gauge_identity_residual"] = worst_identity;
  rec.checks.push_back(make_check("gauge_identity", worst_identity, tol::scaled(tol::oracle)));
  const auto grid = quantum::ResidualGrid::standard(p);
  const auto sch = quantum::verify_schrodinger(KernelVariant::Kochan, grid, p, quantum::Hamiltonian::Appendix);
  rec.checks.push_back(make_check("kochan_appendix_residual", sch.residual, tol::scaled(1e-5)));
  rec.outputs["kochan_mass_hamiltonian_residual"] =
      quantum::verify_schrodinger(KernelVariant::Kochan, grid, p, quantum::Hamiltonian::NewMass).residual;
}

}  // namespace

ResultRecord run_scenario(const ScenarioConfig& config) {
  const Resolved r = resolve(config);
  ResultRecord rec;
  rec.scenario = r.cfg.scenario;
  rec.name = r.cfg.name;
  ScenarioConfig echo = r.cfg;
  rec.config = to_json(echo);
  const std::string& s = r.cfg.scenario;
  if (s == "classical-trajectory") classical_trajectory(r, rec);
  else if (s == "classical-defect") classical_defect(r, rec);
  else if (s == "packet-evolution") packet_evolution(r, rec);
  else if (s == "kernel-check") kernel_check(r, rec);
  else if (s == "quantum-defect") quantum_defect(r, rec);
  else if (s == "asymptotics") asymptotics(r, rec);
  else appendix_check(r, rec);
  for (const auto& c : rec.checks) rec.passed = rec.passed && c.passed;
  rec.exit_code = rec.passed ? kSuccess : kVerificationFailure;
  return rec;
}

void write_outputs(const ResultRecord& record, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const auto stem = std::filesystem::path(out_dir) / record.name;
  {
    std::ofstream csv(stem.string() + ".csv", std::ios::binary);
    csv << record.series.str();
  }
  std::ofstream js(stem.string() + ".json", std::ios::binary);
  js << record.to_json().dump(2) << '\n';
}

std::vector<double> parse_values(const std::string& spec) {
  auto number = [&](const std::string& s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) throw ConfigError("bad number '" + s + "' in --values");
    return v;
  };
  std::vector<double> out;
  if (spec.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.size() != 3) throw ConfigError("--values range must be lo:hi:step");
    const double lo = number(parts[0]), hi = number(parts[1]), step = number(parts[2]);
    if (!(step > 0.0) || hi < lo) throw ConfigError("--values range needs step > 0 and hi >= lo");
    const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
    for (std::size_t i = 0; i <= n; ++i) out.push_back(lo + static_cast<double>(i) * step);
  } else {
    std::stringstream ss(spec);
    for (std::string item; std::getline(ss, item, ',');) out.push_back(number(item));
  }
  if (out.empty()) throw ConfigError("--values is empty");
  return out;
}

std::vector<ResultRecord> run_sweep(const ScenarioConfig& base, const std::string& axis,
                                    const std::vector<double>& values) {
  const std::string path = resolve_key(axis);
  json doc = to_json(base);
  {
    json probe = doc;
    apply_override(probe, path + "=0");
    (void)config_from_json(probe);  // rejects unknown axes up front
  }
  const std::string stem = base.name.empty() ? base.scenario : base.name;
  std::vector<ResultRecord> out(values.size());
  const auto n = static_cast<long long>(values.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    json point = doc;
    point["name"] = stem + "_" + axis + "_" + std::to_string(k);
    apply_override(point, path + "=" + format_number(values[k]));
    ResultRecord& rec = out[k];
    try {
      rec = run_scenario(config_from_json(point));
    } catch (const std::exception& e) {
      rec.scenario = base.scenario;
      rec.name = point["name"].get<std::string>();
      rec.config = point;
      rec.passed = false;
      rec.error = e.what();
      rec.exit_code = dynamic_cast<const DomainError*>(&e) != nullptr ? kDomainError : kUsageError;
    }
    rec.outputs["sweep_axis"] = axis;
    rec.outputs["sweep_value"] = values[k];
  }
  return out;
}

json VerificationSummary::to_json() const {
  json arr = json::array();
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const auto& c = checks[i];
    json item{{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"relation", c.relation},
              {"passed", c.passed}};
    if (!errors[i].empty()) item["error"] = errors[i];
    arr.push_back(item);
  }
  return json{{"passed", passed}, {"checks", arr}};
}

}  // namespace memosc::cli
