#include "cwom/cli/scenarios.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cwom/brillouin/brillouin.hpp"
#include "cwom/dynamics/evolve.hpp"
#include "cwom/dynamics/stepper.hpp"
#include "cwom/io/csv.hpp"
#include "cwom/io/snapshot.hpp"
#include "cwom/lattice/array.hpp"
#include "cwom/scatter/comb.hpp"
#include "cwom/strongcoupling/regime.hpp"

namespace cwom {
namespace {

const Dimension kFieldAmplitude = Dimension::of(-0.5, 0);

KeySpec q(const char* s, const char* k, Dimension d, const char* def, const char* help = "") {
  return {s, k, KeyKind::quantity, d, def, {}, help};
}
KeySpec i(const char* s, const char* k, const char* def, const char* help = "") {
  return {s, k, KeyKind::integer, {}, def, {}, help};
}
KeySpec r(const char* s, const char* k, const char* def, const char* help = "") {
  return {s, k, KeyKind::real, {}, def, {}, help};
}
KeySpec b(const char* s, const char* k, const char* def, const char* help = "") {
  return {s, k, KeyKind::boolean, {}, def, {}, help};
}
KeySpec c(const char* s, const char* k, std::vector<std::string> choices, const char* def, const char* help = "") {
  return {s, k, KeyKind::choice, {}, def, std::move(choices), help};
}

}  // namespace

std::vector<std::string> scenario_names() {
  return {"custom", "comb", "backward_gain", "intermodal_swap", "array_convergence", "regime_sweep"};
}

ConfigSchema scenario_schema() {
  using namespace dims;
  return {
      c("scenario", "name", scenario_names(), "custom"),

      i("grid", "n_points", "256"),
      q("grid", "dx", length, "1 um"),

      q("photon", "omega0", rate, "0 /s", "omega(k) = omega0 + velocity k + dispersion k^2"),
      q("photon", "velocity", velocity, "2e8 m/s"),
      q("photon", "dispersion", diffusion, "0 m^2/s"),
      q("photon", "carrier_k", wavenumber, "0 1/m", "envelope carrier wavenumber"),

      q("phonon", "Omega0", rate, "2pi*10 GHz"),
      q("phonon", "velocity", velocity, "0 m/s"),
      q("phonon", "dispersion", diffusion, "0 m^2/s"),

      q("coupling", "g_ppp", coupling(0), "0 Hz m^1/2"),
      q("coupling", "g_mmp", coupling(2), "0 Hz m^5/2"),
      q("coupling", "g_mpm", coupling(2), "0 Hz m^5/2"),
      q("coupling", "g_mpm_im", coupling(2), "0 Hz m^5/2"),
      q("coupling", "g_ppm", coupling(1), "0 Hz m^3/2"),
      q("coupling", "g_mpp", coupling(1), "0 Hz m^3/2"),
      q("coupling", "g_mpp_im", coupling(1), "0 Hz m^3/2"),
      q("coupling", "g_mmm", coupling(3), "0 Hz m^7/2"),

      q("bath", "kappa", rate, "0 /s"),
      q("bath", "gamma_mech", rate, "0 /s"),
      r("bath", "n_th", ""),
      q("bath", "temperature", temperature, ""),
      c("bath", "sampling", {"none", "wigner"}, "none"),

      c("drive", "mode", {"none", "endfire"}, "none"),
      q("drive", "power", power, "0 W"),
      q("drive", "omega_L", rate, "", "defaults to the carrier frequency"),
      q("drive", "ramp_time", time, "0 s"),

      c("boundary", "kind", {"periodic", "open"}, "periodic"),
      r("boundary", "absorber_fraction", "0.1"),

      r("initial", "pulse_photons", "0"),
      q("initial", "pulse_center", length, "", "defaults to the grid centre"),
      q("initial", "pulse_width", length, "10 um"),
      q("initial", "pulse_k", wavenumber, "0 1/m"),
      q("initial", "phonon_amplitude", kFieldAmplitude, "0 1/m^1/2"),

      q("integration", "dt", time, "0 s", "0 picks half the stability bound"),
      q("integration", "duration", time, "1 ps"),
      i("integration", "output_every", "10"),

      i("ensemble", "trajectories", "1"),
      i("ensemble", "seed", "0"),

      b("output", "snapshots", "true"),

      q("comb", "velocity", velocity, "2e8 m/s"),
      q("comb", "omega_L", rate, "2pi*193.5 THz"),
      q("comb", "Omega0", rate, "2pi*100 MHz"),
      q("comb", "g0", coupling(0), "1e3 Hz m^1/2"),
      q("comb", "beta", kFieldAmplitude, "0 1/m^1/2", "0 picks modulation index 1"),
      q("comb", "power", power, "1 mW"),
      q("comb", "length", length, "0 m", "0 picks half a phonon period of transit"),
      i("comb", "n_points", "512"),
      i("comb", "periods", "20"),
      i("comb", "sidebands", "2"),

      q("brillouin", "g0", coupling(0), "1e3 Hz m^1/2"),
      q("brillouin", "v1", velocity, "7e7 m/s"),
      q("brillouin", "v2", velocity, "7e7 m/s"),
      q("brillouin", "vb", velocity, "100 m/s"),
      q("brillouin", "Gamma", rate, "2pi*1 MHz"),
      q("brillouin", "kappa2", rate, "", "defaults to loss_fraction G_B P1 v2"),
      r("brillouin", "loss_fraction", "0.1"),
      q("brillouin", "omega1", rate, "2pi*193.5 THz"),
      q("brillouin", "Omega0", rate, "2pi*1 GHz"),
      {"brillouin", "powers", KeyKind::quantity_list, power, "1 mW, 10 mW, 100 mW", {}, ""},
      b("brillouin", "counter_propagating", "true"),
      i("brillouin", "points", "128"),
      r("brillouin", "settle", "25", "simulated decay times 1/Gamma after the transit"),
      r("brillouin", "span", "4", "interior length in gain lengths"),

      q("swap", "g12", rate, "1e7 /s"),
      q("swap", "v2", velocity, "7e7 m/s"),
      q("swap", "vb", velocity, "6000 m/s"),
      q("swap", "kappa2", rate, "1e5 /s"),
      q("swap", "Gamma", rate, "2pi*1 kHz"),
      r("swap", "ratio", "10"),
      q("swap", "length", length, "0.5 m"),
      i("swap", "points", "501"),
      q("swap", "g_min", rate, "1e3 /s"),
      q("swap", "g_max", rate, "1e9 /s"),
      i("swap", "sweep_points", "10000"),

      i("array", "n_min", "16"),
      i("array", "halvings", "3"),
      q("array", "length", length, "6.2831853071795862 m"),
      q("array", "D", diffusion, "0.25 m^2/s"),
      q("array", "Omega0", rate, "1 /s"),
      q("array", "g_tilde", coupling(0), "0.5 Hz m^1/2"),
      q("array", "duration", time, "2 s"),
      i("array", "fine_points", "256"),
      c("array", "coupling", {"local", "link", "both"}, "both"),
  };
}

Config load_scenario(const std::string& path) { return Config::parse_file(path, scenario_schema()); }

Config parse_scenario(const std::string& text) {
  std::istringstream in(text);
  return Config::parse(in, scenario_schema());
}

std::string scenario_preset(const std::string& name) {
  if (name == "custom")
    return "[scenario]\nname = custom\n"
           "[grid]\nn_points = 512\ndx = 0.5 um\n"
           "[photon]\nvelocity = 2e8 m/s\ndispersion = 0.02 m^2/s\n"
           "[phonon]\nOmega0 = 2pi*10 GHz\n"
           "[coupling]\ng_ppp = 2e4 Hz m^1/2\n"
           "[bath]\nkappa = 1e11 /s\ngamma_mech = 1e11 /s\nn_th = 0.5\nsampling = wigner\n"
           "[boundary]\nkind = open\n"
           "[initial]\npulse_photons = 1e6\npulse_center = 40 um\npulse_width = 8 um\n"
           "[integration]\nduration = 2 ps\noutput_every = 100\n"
           "[ensemble]\ntrajectories = 4\nseed = 1\n";
  for (const auto& n : scenario_names())
    if (n == name) return "[scenario]\nname = " + name + "\n";
  throw ConfigError({"unknown scenario '" + name + "'"});
}

void apply_overrides(Config& cfg, const RunOptions& opt) {
  if (opt.scenario) cfg.set("scenario", "name", *opt.scenario);
  if (opt.trajectories) cfg.set("ensemble", "trajectories", std::to_string(*opt.trajectories));
  if (opt.seed) cfg.set("ensemble", "seed", std::to_string(*opt.seed));
  if (opt.dt_override) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g s", *opt.dt_override);
    cfg.set("integration", "dt", buf);
  }
}

Model build_custom_model(const Config& cfg) {
  Model m;
  m.grid = Grid1D(static_cast<std::size_t>(cfg.integer("grid", "n_points")), cfg.quantity("grid", "dx"));
  const DispersionSpec photon = DispersionSpec::polynomial(
      {cfg.quantity("photon", "omega0"), cfg.quantity("photon", "velocity"), cfg.quantity("photon", "dispersion")});
  const double kc = cfg.quantity("photon", "carrier_k");
  m.photons.push_back({"photon", photon, {kc, photon(kc)}, std::nullopt});
  m.phonon_dispersion = DispersionSpec::polynomial(
      {cfg.quantity("phonon", "Omega0"), cfg.quantity("phonon", "velocity"), cfg.quantity("phonon", "dispersion")});

  CouplingSet cs;
  cs.g_ppp = cfg.quantity("coupling", "g_ppp");
  cs.g_mmp = cfg.quantity("coupling", "g_mmp");
  cs.g_mpm = {cfg.quantity("coupling", "g_mpm"), cfg.quantity("coupling", "g_mpm_im")};
  cs.g_ppm = cfg.quantity("coupling", "g_ppm");
  cs.g_mpp = {cfg.quantity("coupling", "g_mpp"), cfg.quantity("coupling", "g_mpp_im")};
  cs.g_mmm = cfg.quantity("coupling", "g_mmm");
  const bool even = cs.has_even_terms(), odd = cs.has_odd_terms();
  cs.sector = even && odd ? Sector::mixed : (odd ? Sector::odd : Sector::even);
  cs.broken_inversion = even && odd;
  m.interaction = InteractionModel::single(cs);

  m.bath.kappa = cfg.quantity("bath", "kappa");
  m.bath.gamma_mech = cfg.quantity("bath", "gamma_mech");
  if (cfg.has("bath", "n_th")) m.bath.n_th = cfg.real("bath", "n_th");
  if (cfg.has("bath", "temperature")) {
    m.bath.temperature = cfg.quantity("bath", "temperature");
    m.bath.omega_ref = cfg.quantity("phonon", "Omega0");
  }
  if (!m.bath.n_th && !m.bath.temperature) m.bath.n_th = 0.0;
  m.bath.sampling = cfg.text("bath", "sampling") == "wigner" ? Sampling::wigner : Sampling::none;

  m.boundary.kind = cfg.text("boundary", "kind") == "open" ? BoundaryKind::open : BoundaryKind::periodic;
  m.boundary.absorber_fraction = cfg.real("boundary", "absorber_fraction");

  if (cfg.text("drive", "mode") == "endfire") {
    DriveSpec d;
    d.omega_L = cfg.has("drive", "omega_L") ? cfg.quantity("drive", "omega_L") : photon(kc);
    d.k_L = kc;
    d.alpha_in = std::sqrt(cfg.quantity("drive", "power") / (kHbar * d.omega_L));
    d.ramp_time = cfg.quantity("drive", "ramp_time");
    m.drives.push_back(d);
  }
  m.validate();
  return m;
}

namespace {

namespace fs = std::filesystem;

SwapParams swap_params(const Config& cfg) {
  SwapParams p;
  p.g12 = cfg.quantity("swap", "g12");
  p.v2 = cfg.quantity("swap", "v2");
  p.vb = cfg.quantity("swap", "vb");
  p.gamma2 = cfg.quantity("swap", "kappa2") / p.v2;
  p.gamma_b = cfg.quantity("swap", "Gamma") / p.vb;
  return p;
}

BrillouinParams brillouin_params(const Config& cfg, double P1) {
  const double g0 = cfg.quantity("brillouin", "g0"), v1 = cfg.quantity("brillouin", "v1"),
               v2 = cfg.quantity("brillouin", "v2"), Gamma = cfg.quantity("brillouin", "Gamma"),
               omega1 = cfg.quantity("brillouin", "omega1");
  const double kappa2 = cfg.has("brillouin", "kappa2")
                            ? cfg.quantity("brillouin", "kappa2")
                            : cfg.real("brillouin", "loss_fraction") * brillouin_gain(g0, v1, v2, Gamma, omega1) * P1 * v2;
  return BrillouinParams::from_pump(g0, P1, v1, v2, cfg.quantity("brillouin", "vb"), Gamma, kappa2, omega1,
                                    cfg.quantity("brillouin", "Omega0"));
}

ArrayConvergenceSpec array_spec(const Config& cfg, bool link) {
  ArrayConvergenceSpec s;
  s.n_min = static_cast<std::size_t>(cfg.integer("array", "n_min"));
  s.halvings = static_cast<int>(cfg.integer("array", "halvings"));
  s.length = cfg.quantity("array", "length");
  s.D = cfg.quantity("array", "D");
  s.Omega0 = cfg.quantity("array", "Omega0");
  s.g_tilde = cfg.quantity("array", "g_tilde");
  s.duration = cfg.quantity("array", "duration");
  s.fine_points = static_cast<std::size_t>(cfg.integer("array", "fine_points"));
  s.link = link;
  return s;
}

CombParams comb_params(const Config& cfg) {
  CombParams p;
  p.velocity = cfg.quantity("comb", "velocity");
  p.omega_L = cfg.quantity("comb", "omega_L");
  p.Omega0 = cfg.quantity("comb", "Omega0");
  p.g0 = cfg.quantity("comb", "g0");
  p.beta = cfg.quantity("comb", "beta");
  p.power = cfg.quantity("comb", "power");
  p.length = cfg.quantity("comb", "length");
  p.n_points = static_cast<std::size_t>(std::max(0L, cfg.integer("comb", "n_points")));
  p.periods = static_cast<std::size_t>(std::max(0L, cfg.integer("comb", "periods")));
  p.sidebands = static_cast<int>(cfg.integer("comb", "sidebands"));
  return p;
}

std::vector<std::string> array_couplings(const Config& cfg) {
  const std::string c = cfg.text("array", "coupling");
  if (c == "both") return {"local", "link"};
  return {c};
}

FieldState custom_initial_state(const Model& m, const Config& cfg) {
  FieldState s = m.vacuum();
  const double photons = cfg.real("initial", "pulse_photons");
  if (photons > 0.0) {
    const double x0 = cfg.has("initial", "pulse_center") ? cfg.quantity("initial", "pulse_center") : 0.5 * m.grid.length();
    const double w = cfg.quantity("initial", "pulse_width");
    const double k = cfg.quantity("initial", "pulse_k");
    for (std::size_t i = 0; i < m.grid.size(); ++i) {
      const double x = m.grid.x(i);
      s.a()[i] = std::exp(-0.5 * (x - x0) * (x - x0) / (w * w)) * std::polar(1.0, k * x);
    }
    const double scale = std::sqrt(photons / s.photon_number());
    for (auto& v : s.a()) v *= scale;
  }
  const double beta = cfg.quantity("initial", "phonon_amplitude");
  for (auto& v : s.b()) v = beta;
  return s;
}

void problem(std::vector<std::string>& out, const std::string& where, const std::string& what) {
  out.push_back(where + ": " + what);
}

template <class F>
void attempt(std::vector<std::string>& out, const std::string& where, F&& f) {
  try {
    f();
  } catch (const ConfigError& e) {
    for (const auto& p : e.problems()) out.push_back(p);
  } catch (const std::exception& e) {
    problem(out, where, e.what());
  }
}

void write_report(const fs::path& dir, RunResult& res) {
  nlohmann::ordered_json j;
  j["scenario"] = res.scenario;
  j["numbers"] = res.numbers;
  j["labels"] = res.labels;
  const fs::path path = dir / "report.json";
  res.files.push_back(path.string());
  j["files"] = res.files;
  std::ofstream out(path);
  out << j.dump(2) << "\n";
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
}

void run_custom(const Config& cfg, const fs::path& dir, RunResult& res) {
  const Model m = build_custom_model(cfg);
  const FieldState s0 = custom_initial_state(m, cfg);
  double dt = cfg.quantity("integration", "dt");
  if (dt == 0.0) dt = 0.5 * stability_bound(m, s0);
  const double T = cfg.quantity("integration", "duration");
  EvolveConfig ec;
  ec.steps = static_cast<std::size_t>(std::ceil(T / dt));
  ec.dt = dt;
  ec.output_every = static_cast<std::size_t>(cfg.integer("integration", "output_every"));
  ec.seed = static_cast<std::uint64_t>(cfg.integer("ensemble", "seed"));
  ec.noise = m.bath.sampling == Sampling::wigner;
  const auto n_traj = static_cast<std::size_t>(cfg.integer("ensemble", "trajectories"));

  const std::vector<Observable> obs{photon_number_observable(), phonon_number_observable(), hamiltonian_observable(m)};
  const std::vector<TrajectoryRecord> records = run_ensemble(s0, m, ec, n_traj, obs);
  const TrajectoryRecord mean = n_traj > 1 ? ensemble_mean(records) : records.front();

  const fs::path csv = dir / "observables.csv";
  {
    CsvWriter w(csv.string(), {{"time", "s"}, {"photon_number", ""}, {"phonon_number", ""}, {"hamiltonian", "1/s"}});
    for (std::size_t k = 0; k < mean.times.size(); ++k)
      w.row(std::vector<double>{mean.times[k], mean.values[0][k], mean.values[1][k], mean.values[2][k]});
  }
  res.files.push_back(csv.string());
  if (cfg.flag("output", "snapshots")) {
    write_snapshot((dir / "initial.cwom").string(), s0);
    write_snapshot((dir / "final.cwom").string(), records.front().final_state);
    res.files.push_back((dir / "initial.cwom").string());
    res.files.push_back((dir / "final.cwom").string());
  }
  res.numbers["dt"] = dt;
  res.numbers["steps"] = static_cast<double>(ec.steps);
  res.numbers["trajectories"] = static_cast<double>(n_traj);
  res.numbers["final_photon_number"] = mean.values[0].back();
  res.numbers["final_phonon_number"] = mean.values[1].back();
}

void run_comb(const Config& cfg, const fs::path& dir, RunResult& res) {
  const CombParams p = comb_params(cfg);
  const CombResult r = forward_comb(p);
  const fs::path csv = dir / "comb_spectrum.csv";
  {
    CsvWriter w(csv.string(), {{"order", ""}, {"frequency_offset", "1/s"}, {"power", "W"}, {"phase_modulation_power", "W"}});
    for (std::size_t k = 0; k < r.order.size(); ++k)
      w.row(std::vector<double>{double(r.order[k]), r.order[k] * p.Omega0, r.power[k], r.bessel[k]});
  }
  res.files.push_back(csv.string());
  res.numbers["modulation_index"] = r.modulation_index;
  res.numbers["max_asymmetry"] = r.max_asymmetry;
  res.numbers["steps"] = static_cast<double>(r.steps);
}

void run_backward_gain(const Config& cfg, const fs::path& dir, RunResult& res) {
  GainRunConfig gc;
  gc.n_points = static_cast<std::size_t>(cfg.integer("brillouin", "points"));
  gc.counter_propagating = cfg.flag("brillouin", "counter_propagating");
  gc.settle_decay_times = cfg.real("brillouin", "settle");
  gc.span_gain_lengths = cfg.real("brillouin", "span");
  const fs::path summary = dir / "gain_summary.csv";
  CsvWriter sw(summary.string(), {{"pump_power", "W"}, {"measured_slope", "1/m"}, {"predicted_slope", "1/m"},
                                  {"relative_error", ""}, {"pump_depletion", ""}, {"fit_gain_lengths", ""},
                                  {"decay_ratio", ""}});
  res.files.push_back(summary.string());
  double worst = 0.0;
  const auto powers = cfg.quantities("brillouin", "powers");
  for (std::size_t k = 0; k < powers.size(); ++k) {
    const BrillouinParams p = brillouin_params(cfg, powers[k]);
    const GainRunResult r = simulate_gain(p, gc);
    sw.row(std::vector<double>{powers[k], r.measured_slope, r.predicted_slope, r.relative_error, r.pump_depletion,
                               r.fit_gain_lengths, adiabatic_eliminate(p).decay_ratio});
    const fs::path prof = dir / ("gain_profile_" + std::to_string(k) + ".csv");
    CsvWriter w(prof.string(), {{"x", "m"}, {"pump_power", "W"}, {"stokes_power", "W"}, {"phonon_power", "W"}});
    for (std::size_t n = 0; n < r.x.size(); ++n) w.row(std::vector<double>{r.x[n], r.P1[n], r.P2[n], r.Pb[n]});
    res.files.push_back(prof.string());
    worst = std::max(worst, r.relative_error);
  }
  res.numbers["max_relative_error"] = worst;
}

void report_regime(const RegimeReport& rep, RunResult& res) {
  res.labels["regime"] = to_string(rep.regime);
  res.numbers["re_lambda_plus"] = rep.lambda_plus.real();
  res.numbers["im_lambda_plus"] = rep.lambda_plus.imag();
  res.numbers["re_lambda_minus"] = rep.lambda_minus.real();
  res.numbers["im_lambda_minus"] = rep.lambda_minus.imag();
  res.numbers["threshold_oscillatory"] = rep.threshold_osc;
  res.numbers["threshold_strong"] = rep.threshold_strong;
  res.numbers["coupling_at_ratio"] = rep.coupling_strong;
  res.numbers["ratio"] = rep.ratio;
}

void run_intermodal_swap(const Config& cfg, const fs::path& dir, RunResult& res) {
  const SwapParams p = swap_params(cfg);
  const RegimeReport rep = classify(p, cfg.real("swap", "ratio"));
  const double L = cfg.quantity("swap", "length");
  const auto points = static_cast<std::size_t>(cfg.integer("swap", "points"));
  const fs::path csv = dir / "swap_profile.csv";
  {
    CsvWriter w(csv.string(), {{"x", "m"}, {"photon_intensity", ""}, {"phonon_intensity", ""}});
    for (std::size_t k = 0; k < points; ++k) {
      const double x = L * static_cast<double>(k) / static_cast<double>(points - 1);
      const Vector2c phi = propagate(rep.M, Vector2c{1.0, 0.0}, x);
      w.row(std::vector<double>{x, std::norm(phi[0]), std::norm(phi[1])});
    }
  }
  res.files.push_back(csv.string());
  report_regime(rep, res);
}

void run_regime_sweep(const Config& cfg, const fs::path& dir, RunResult& res) {
  const SwapParams p = swap_params(cfg);
  const double ratio = cfg.real("swap", "ratio");
  const auto sweep = regime_sweep(p, cfg.quantity("swap", "g_min"), cfg.quantity("swap", "g_max"),
                                  static_cast<std::size_t>(cfg.integer("swap", "sweep_points")), ratio);
  const fs::path csv = dir / "regime_sweep.csv";
  double onset = NAN;
  {
    CsvWriter w(csv.string(), {{"g12", "1/s"}, {"re_lambda_plus", "1/m"}, {"im_lambda_plus", "1/m"},
                               {"re_lambda_minus", "1/m"}, {"im_lambda_minus", "1/m"}, {"regime", ""}});
    for (const auto& rep : sweep) {
      const double g = std::abs(rep.M[0][1]) * p.v2;
      if (std::isnan(onset) && rep.lambda_plus.imag() != 0.0) onset = g;
      w.row(std::vector<std::string>{CsvWriter::cell(g), CsvWriter::cell(rep.lambda_plus.real()),
                                     CsvWriter::cell(rep.lambda_plus.imag()), CsvWriter::cell(rep.lambda_minus.real()),
                                     CsvWriter::cell(rep.lambda_minus.imag()), to_string(rep.regime)});
    }
  }
  res.files.push_back(csv.string());
  const RegimeReport base = classify(p, ratio);
  res.numbers["threshold_oscillatory"] = base.threshold_osc;
  res.numbers["threshold_strong"] = base.threshold_strong;
  res.numbers["coupling_at_ratio"] = base.coupling_strong;
  res.numbers["measured_onset"] = onset;
}

void run_array_convergence(const Config& cfg, const fs::path& dir, RunResult& res) {
  const fs::path csv = dir / "array_convergence.csv";
  CsvWriter w(csv.string(), {{"coupling", ""}, {"sites", ""}, {"dx", "m"}, {"l2_error", ""}});
  for (const auto& kind : array_couplings(cfg)) {
    const ArrayConvergenceResult r = array_convergence(array_spec(cfg, kind == "link"));
    for (std::size_t k = 0; k < r.dx.size(); ++k)
      w.row(std::vector<std::string>{kind, std::to_string(r.sites[k]), CsvWriter::cell(r.dx[k]), CsvWriter::cell(r.error[k])});
    res.numbers["order_" + kind] = r.order;
  }
  res.files.push_back(csv.string());
}

}  // namespace

void validate_scenario(const Config& cfg) {
  std::vector<std::string> out;
  const std::string name = cfg.text("scenario", "name");
  if (cfg.integer("ensemble", "trajectories") < 1) problem(out, "[ensemble] trajectories", "must be at least 1");
  if (cfg.integer("integration", "output_every") < 1) problem(out, "[integration] output_every", "must be at least 1");

  if (name == "custom") {
    if (cfg.integer("grid", "n_points") < 8) problem(out, "[grid] n_points", "must be at least 8");
    if (!(cfg.quantity("grid", "dx") > 0.0)) problem(out, "[grid] dx", "must be positive");
    if (!(cfg.quantity("integration", "duration") > 0.0)) problem(out, "[integration] duration", "must be positive");
    if (cfg.quantity("integration", "dt") < 0.0) problem(out, "[integration] dt", "must be non-negative");
    if (cfg.has("bath", "n_th") && cfg.has("bath", "temperature"))
      problem(out, "[bath] n_th", "give either n_th or temperature, not both");
    if (cfg.text("drive", "mode") == "endfire" && cfg.text("boundary", "kind") != "open")
      problem(out, "[drive] mode", "endfire drives need [boundary] kind = open");
    if (cfg.real("initial", "pulse_photons") < 0.0) problem(out, "[initial] pulse_photons", "must be non-negative");
    if (cfg.real("initial", "pulse_photons") > 0.0 && !(cfg.quantity("initial", "pulse_width") > 0.0))
      problem(out, "[initial] pulse_width", "must be positive");
    if (out.empty()) attempt(out, "model", [&] { build_custom_model(cfg); });
  } else if (name == "comb") {
    const CombParams p = comb_params(cfg);
    if (p.n_points < 64) problem(out, "[comb] n_points", "must be at least 64");
    if (p.periods < 1) problem(out, "[comb] periods", "must be at least 1");
    if (p.sidebands < 1) problem(out, "[comb] sidebands", "must be at least 1");
    for (const char* k : {"velocity", "Omega0", "g0", "power"})
      if (!(cfg.quantity("comb", k) > 0.0)) problem(out, std::string("[comb] ") + k, "must be positive");
  } else if (name == "backward_gain") {
    const auto powers = cfg.quantities("brillouin", "powers");
    if (cfg.integer("brillouin", "points") < 64) problem(out, "[brillouin] points", "must be at least 64");
    for (double P : powers)
      attempt(out, "[brillouin] powers", [&] {
        const BrillouinParams p = brillouin_params(cfg, P);
        p.validate();
        if (!(adiabatic_eliminate(p).power_slope > 0.0)) throw std::invalid_argument("no net gain at this power");
      });
  } else if (name == "intermodal_swap" || name == "regime_sweep") {
    attempt(out, "[swap]", [&] { swap_params(cfg).validate(); });
    if (!(cfg.real("swap", "ratio") > 0.0)) problem(out, "[swap] ratio", "must be positive");
    if (name == "intermodal_swap") {
      if (!(cfg.quantity("swap", "length") > 0.0)) problem(out, "[swap] length", "must be positive");
      if (cfg.integer("swap", "points") < 2) problem(out, "[swap] points", "must be at least 2");
    } else {
      if (!(cfg.quantity("swap", "g_min") > 0.0)) problem(out, "[swap] g_min", "must be positive");
      if (!(cfg.quantity("swap", "g_max") > cfg.quantity("swap", "g_min")))
        problem(out, "[swap] g_max", "must exceed g_min");
      if (cfg.integer("swap", "sweep_points") < 2) problem(out, "[swap] sweep_points", "must be at least 2");
    }
  } else if (name == "array_convergence") {
    const long n_min = cfg.integer("array", "n_min"), halvings = cfg.integer("array", "halvings"),
               fine = cfg.integer("array", "fine_points");
    if (n_min < 4) problem(out, "[array] n_min", "must be at least 4");
    if (halvings < 1 || halvings > 10) problem(out, "[array] halvings", "must be between 1 and 10");
    if (n_min >= 4 && halvings >= 1 && halvings <= 10 && (fine <= 0 || fine % (2 * (n_min << halvings)) != 0))
      problem(out, "[array] fine_points", "must be a multiple of twice the largest array");
    for (const char* k : {"length", "D", "duration"})
      if (!(cfg.quantity("array", k) > 0.0)) problem(out, std::string("[array] ") + k, "must be positive");
  }
  if (!out.empty()) throw ConfigError(std::move(out));
}

RunResult run_scenario(Config cfg, const RunOptions& opt) {
  apply_overrides(cfg, opt);
  validate_scenario(cfg);
  RunResult res;
  res.scenario = cfg.text("scenario", "name");
  if (opt.validate_only) return res;

  const fs::path dir(opt.output_dir);
  fs::create_directories(dir);
  const fs::path eff = dir / "effective.cfg";
  {
    std::ofstream out(eff);
    cfg.write_effective(out);
    if (!out) throw std::runtime_error("cannot write '" + eff.string() + "'");
  }
  res.files.push_back(eff.string());

  if (res.scenario == "custom")
    run_custom(cfg, dir, res);
  else if (res.scenario == "comb")
    run_comb(cfg, dir, res);
  else if (res.scenario == "backward_gain")
    run_backward_gain(cfg, dir, res);
  else if (res.scenario == "intermodal_swap")
    run_intermodal_swap(cfg, dir, res);
  else if (res.scenario == "regime_sweep")
    run_regime_sweep(cfg, dir, res);
  else
    run_array_convergence(cfg, dir, res);
  write_report(dir, res);
  return res;
}

}  // namespace cwom
