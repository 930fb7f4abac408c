#include "rir/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "rir/acceptance.hpp"
#include "rir/config.hpp"
#include "rir/constants.hpp"
#include "rir/csv.hpp"
#include "rir/errors.hpp"
#include "rir/fitting.hpp"
#include "rir/grating.hpp"
#include "rir/protocol.hpp"
#include "rir/pumping.hpp"
#include "rir/rng.hpp"
#include "rir/sequence.hpp"
#include "rir/spectrum.hpp"

namespace rir {

namespace c = constants;
namespace fs = std::filesystem;

namespace {

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Flags shared by every subcommand; flag overrides beat the config file,
// which beats the compiled-in defaults.
struct CommonOpts {
  std::string config_path;
  std::string outdir_flag;
  std::string out_flag;
  std::optional<double> theta_deg;
  std::optional<double> temp_uk;
  std::optional<std::uint64_t> seed;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "scenario configuration file");
    cmd->add_option("--outdir", outdir_flag,
                    "output directory (overrides RIR_OUTDIR and config)");
    cmd->add_option("--out", out_flag, "output file name");
    cmd->add_option("--theta-deg", theta_deg, "probe-coupling angle [deg]");
    cmd->add_option("--temp-uk", temp_uk, "ensemble temperature [uK]");
    cmd->add_option("--seed", seed, "master random seed");
  }

  ScenarioConfig resolve() const {
    ScenarioConfig cfg =
        config_path.empty() ? ScenarioConfig{} : load_config(config_path);
    if (theta_deg) cfg.theta = *theta_deg * c::pi / 180.0;
    if (temp_uk) cfg.temperature = *temp_uk * 1e-6;
    if (seed) cfg.seed = *seed;
    cfg.validate();
    return cfg;
  }

  std::string out_path(const ScenarioConfig& cfg,
                       const char* default_name) const {
    std::string dir = outdir_flag;
    if (dir.empty())
      if (const char* env = std::getenv("RIR_OUTDIR")) dir = env;
    if (dir.empty()) dir = cfg.outdir;
    std::string name = out_flag.empty() ? default_name : out_flag;
    fs::path p(name);
    if (!p.is_absolute()) p = fs::path(dir) / p;
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    return p.string();
  }

  std::string out_dir(const ScenarioConfig& cfg) const {
    std::string dir = outdir_flag;
    if (dir.empty())
      if (const char* env = std::getenv("RIR_OUTDIR")) dir = env;
    if (dir.empty()) dir = cfg.outdir;
    fs::create_directories(dir);
    return dir;
  }
};

std::vector<double> scale(const std::vector<double>& v, double factor) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * factor;
  return out;
}

Polarization polarization_from_string(const std::string& name) {
  if (name == "sigma+") return Polarization::sigma_plus;
  if (name == "sigma-") return Polarization::sigma_minus;
  if (name == "linear") return Polarization::linear;
  throw std::invalid_argument("polarization must be sigma+, sigma- or linear");
}

int cmd_spectrum(const CommonOpts& common, std::optional<double> ic,
                 std::optional<double> ip, std::optional<double> dmin_khz,
                 std::optional<double> dmax_khz, int n_points,
                 std::ostream& out) {
  ScenarioConfig cfg = common.resolve();
  if (ic) cfg.coupling.intensity = *ic * 10.0;  // mW/cm^2 -> W/m^2
  if (ip) cfg.probe.intensity = *ip * 10.0;
  const double dmin = dmin_khz ? *dmin_khz * c::two_pi * 1e3 : cfg.delta_min;
  const double dmax = dmax_khz ? *dmax_khz * c::two_pi * 1e3 : cfg.delta_max;
  const int n = n_points > 0 ? n_points : cfg.n_delta;

  const SpectrumCurve curve =
      transmission_spectrum(cfg.rir_params(), dmin, dmax, n);
  const std::string path = common.out_path(cfg, "spectrum.csv");
  write_csv_file(path, {"delta_hz", "transmission"},
                 {scale(curve.delta_grid, 1.0 / c::two_pi), curve.values});

  std::string width_note = "peak-to-peak n/a (extrema not interior)";
  try {
    const double width = peak_to_peak_linewidth(curve);
    width_note = "peak-to-peak " + num(width / c::two_pi / 1e3) + " kHz";
  } catch (const std::domain_error&) {
  }
  out << "spectrum: wrote " << path << " (" << n << " points); " << width_note
      << "\n";
  return 0;
}

int cmd_storage_spectrum(const CommonOpts& common, double ts_us,
                         std::optional<double> read_ic, double read_us,
                         std::optional<double> dmin_khz,
                         std::optional<double> dmax_khz, int n_delta,
                         int n_time, std::ostream& out) {
  ScenarioConfig cfg = common.resolve();
  MemoryTimeline tl;
  tl.write_duration = 100e-6;
  tl.storage_time = ts_us * 1e-6;
  tl.read.kind = ReadKind::continuous;
  tl.read.intensity = read_ic ? *read_ic * 10.0 : cfg.read.intensity;
  tl.read.duration = read_us * 1e-6;

  const double qu = cfg.geometry().q * cfg.ensemble().u;
  const double dmin = dmin_khz ? *dmin_khz * c::two_pi * 1e3 : -3.0 * qu;
  const double dmax = dmax_khz ? *dmax_khz * c::two_pi * 1e3 : 3.0 * qu;
  const int nd = n_delta > 0 ? n_delta : 129;
  const int nt = n_time > 0 ? n_time : cfg.n_time;

  const SpectrumCurve sweep =
      storage_spectrum(cfg.rir_params(), tl, dmin, dmax, nd, nt);
  const std::string path = common.out_path(cfg, "storage_spectrum.csv");
  write_csv_file(path, {"delta_hz", "energy"},
                 {scale(sweep.delta_grid, 1.0 / c::two_pi), sweep.values});

  // FWHM of the energy spectrum by interpolation
  const double peak =
      *std::max_element(sweep.values.begin(), sweep.values.end());
  double left = 0.0, right = 0.0;
  for (std::size_t i = 0; i + 1 < sweep.values.size(); ++i) {
    const double a = sweep.values[i] / peak, b = sweep.values[i + 1] / peak;
    if (a < 0.5 && b >= 0.5)
      left = sweep.delta_grid[i] + (0.5 - a) / (b - a) *
                                       (sweep.delta_grid[i + 1] -
                                        sweep.delta_grid[i]);
    if (a >= 0.5 && b < 0.5)
      right = sweep.delta_grid[i] + (a - 0.5) / (a - b) *
                                        (sweep.delta_grid[i + 1] -
                                         sweep.delta_grid[i]);
  }
  out << "storage-spectrum: wrote " << path << " (" << nd << " points); FWHM "
      << num((right - left) / c::two_pi / 1e3) << " kHz\n";
  return 0;
}

int cmd_retrieve(const CommonOpts& common, const std::string& seq_path,
                 int n_samples, std::ostream& out) {
  ScenarioConfig cfg = common.resolve();
  const SequenceFile seq = read_sequence_file(seq_path);
  const MemoryTimeline tl = seq.to_timeline();
  const RirParams params = cfg.rir_params();
  const GratingState state = write_grating(params, tl);
  const int n = n_samples > 0 ? n_samples : cfg.n_time;
  const RetrievalTrace trace =
      tl.read.kind == ReadKind::square_modulated ? multi_read(state, tl, n)
                                                 : retrieve(state, tl, n);
  const std::string path = common.out_path(cfg, "trace.csv");
  write_csv_file(path, {"t_us", "intensity"},
                 {scale(trace.times, 1e6), trace.intensity});

  const double peak =
      *std::max_element(trace.intensity.begin(), trace.intensity.end());
  const double tau_g = storage_lifetime(cfg.geometry(), cfg.ensemble());
  out << "retrieve: wrote " << path << " (" << n << " samples); b1 "
      << num(state.b1) << ", peak " << num(peak) << ", tau_g "
      << num(tau_g * 1e6) << " us\n";
  return 0;
}

int cmd_montecarlo(const CommonOpts& common, int n_atoms, double t_max_us,
                   int n_times, std::ostream& out) {
  ScenarioConfig cfg = common.resolve();
  const BeamGeometry geom = cfg.geometry();
  const ThermalEnsemble ens = cfg.ensemble();
  const double tau_g = storage_lifetime(geom, ens);
  const double t_max = t_max_us > 0.0 ? t_max_us * 1e-6 : 3.0 * tau_g;
  const auto times = uniform_grid(0.0, t_max, n_times);

  const GratingState state{1.0, geom.q, ens, 0.0};
  const std::uint64_t stream = derive_stream_seed(cfg.seed, "montecarlo", 0);
  const DecayCurve mc = monte_carlo_decay(state, n_atoms, stream, times);
  const DecayCurve exact = analytic_decay(state, times);
  double worst = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i)
    worst = std::max(worst, std::abs(mc.amplitude[i] - exact.amplitude[i]));

  const std::string path = common.out_path(cfg, "decay.csv");
  write_csv_file(path, {"t_us", "amplitude", "intensity"},
                 {scale(mc.times, 1e6), mc.amplitude, mc.intensity});
  out << "montecarlo: wrote " << path << " (" << n_atoms << " atoms, seed "
      << cfg.seed << "); max|MC-analytic| " << num(worst) << "\n";
  return 0;
}

int cmd_pump(const CommonOpts& common, double i_mw, double detuning_mhz,
             double duration_us, const std::string& pol, std::ostream& out) {
  ScenarioConfig cfg = common.resolve();
  const Beam light{i_mw * 10.0, c::two_pi * detuning_mhz * 1e6,
                   polarization_from_string(pol)};
  const ZeemanPopulations pumped =
      pump_evolution(ZeemanPopulations::uniform_f4(), light, duration_us * 1e-6,
                     cfg.species);

  std::vector<double> mf(9), pop(9);
  for (int m = -4; m <= 4; ++m) {
    mf[static_cast<std::size_t>(m + 4)] = m;
    pop[static_cast<std::size_t>(m + 4)] =
        pumped.p4[static_cast<std::size_t>(m + 4)];
  }
  const std::string path = common.out_path(cfg, "populations.csv");
  write_csv_file(path, {"m_f", "population"}, {mf, pop});
  out << "pump: wrote " << path << "; p4[+4] " << num(pumped.p4[8]) << "\n";
  return 0;
}

int cmd_microwave(const CommonOpts& common, double b_mg, double linewidth_khz,
                  const std::string& init, double span_khz, int n_points,
                  std::ostream& out) {
  ScenarioConfig cfg = common.resolve();
  ZeemanPopulations pops;
  if (init == "uniform") {
    pops = ZeemanPopulations::uniform_f4();
  } else if (init == "stretched") {
    pops = ZeemanPopulations::stretched();
  } else if (init == "pumped") {
    pops = pump_evolution(ZeemanPopulations::uniform_f4(), cfg.coupling,
                          100e-6, cfg.species);
  } else {
    throw std::invalid_argument("--init must be uniform, stretched or pumped");
  }

  const MicrowaveSpectrum spec =
      microwave_spectrum(pops, b_mg * 1e-7, cfg.species, linewidth_khz * 1e3);
  const auto grid =
      uniform_grid(-span_khz * 1e3, span_khz * 1e3, n_points);
  const SpectrumCurve scan = render_microwave_scan(spec, grid);

  const std::string path = common.out_path(cfg, "microwave.csv");
  write_csv_file(path, {"offset_khz", "signal"},
                 {scale(scan.delta_grid, 1e-3), scan.values});
  out << "microwave: wrote " << path << "; " << spec.frequencies.size()
      << " resonances";
  if (spec.frequencies.size() >= 2)
    out << ", spacing "
        << num((spec.frequencies[1] - spec.frequencies[0]) / 1e3) << " kHz";
  out << "\n";
  return 0;
}

int cmd_fit(const CommonOpts& common, const std::string& model_name,
            const std::string& in_path, const std::string& ycol,
            const std::string& json_path, bool report_temperature,
            std::ostream& out) {
  ScenarioConfig cfg = common.resolve();
  const CsvTable table = read_csv_file(in_path);
  if (table.header.size() < 2)
    throw std::invalid_argument("fit: input needs at least two columns");
  int yindex = 1;
  if (!ycol.empty()) {
    yindex = table.column_index(ycol);
    if (yindex < 0)
      throw std::invalid_argument("fit: no column named '" + ycol + "'");
  }

  const FitModel model = fit_model_from_string(model_name);
  const auto& x = table.columns[0];
  const auto& y = table.columns[static_cast<std::size_t>(yindex)];
  const FitResult fit = fit_curve(model, x, y);
  if (fit.status == "singular")
    throw NumericalError("fit: normal equations are numerically singular");

  out << "model=" << to_string(fit.model) << "\n"
      << "converged=" << (fit.converged ? "true" : "false") << "\n"
      << "status=" << fit.status << "\n"
      << "iterations=" << fit.iterations << "\n"
      << "residual_norm=" << format_sig9(fit.residual_norm) << "\n";
  for (std::size_t j = 0; j < fit.names.size(); ++j) {
    out << fit.names[j] << "=" << format_sig9(fit.params[j]);
    if (std::isfinite(fit.covariance_diag[j]))
      out << " sigma=" << format_sig9(std::sqrt(fit.covariance_diag[j]));
    out << "\n";
  }

  double temperature = 0.0;
  bool have_temperature = false;
  if (report_temperature) {
    // x-axis units from the header name written by the other subcommands
    const std::string& xname = table.header[0];
    const BeamGeometry geom = cfg.geometry();
    if (model == FitModel::gaussian_decay) {
      double tau = fit.params[2];
      if (xname == "t_us") tau *= 1e-6;
      temperature = temperature_from_lifetime(tau, geom, cfg.species);
    } else {
      double width = fit.params[2];
      if (xname == "delta_hz") width *= c::two_pi;
      else if (xname == "delta_khz" || xname == "offset_khz")
        width *= c::two_pi * 1e3;
      temperature = temperature_from_width(width, geom, cfg.species);
    }
    have_temperature = true;
    out << "temperature_uk=" << format_sig9(temperature * 1e6) << "\n";
  }

  if (!json_path.empty()) {
    nlohmann::json rec;
    rec["model"] = to_string(fit.model);
    rec["converged"] = fit.converged;
    rec["status"] = fit.status;
    rec["iterations"] = fit.iterations;
    rec["residual_norm"] = fit.residual_norm;
    for (std::size_t j = 0; j < fit.names.size(); ++j) {
      rec["params"][fit.names[j]] = fit.params[j];
      if (std::isfinite(fit.covariance_diag[j]))
        rec["sigma"][fit.names[j]] = std::sqrt(fit.covariance_diag[j]);
    }
    if (have_temperature) rec["temperature_uk"] = temperature * 1e6;
    const std::string path = common.out_path(cfg, json_path.c_str());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("fit: cannot open '" + path + "'");
    f << rec.dump(2) << "\n";
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Cold-atom recoil-induced-resonance light-storage toolkit"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  CommonOpts common;

  // spectrum
  auto* sp = app.add_subcommand("spectrum", "probe-transmission spectrum");
  std::optional<double> sp_ic, sp_ip, sp_dmin, sp_dmax;
  int sp_n = 0;
  common.attach(sp);
  sp->add_option("--ic", sp_ic, "coupling intensity [mW/cm2]");
  sp->add_option("--ip", sp_ip, "probe intensity [mW/cm2]");
  sp->add_option("--delta-min-khz", sp_dmin, "grid start [kHz]");
  sp->add_option("--delta-max-khz", sp_dmax, "grid end [kHz]");
  sp->add_option("--n", sp_n, "grid points (>= 32)");

  // storage-spectrum
  auto* ss = app.add_subcommand("storage-spectrum",
                                "retrieved-pulse energy vs write detuning");
  std::optional<double> ss_ric, ss_dmin, ss_dmax;
  double ss_ts = 10.0, ss_rdur = 150.0;
  int ss_nd = 0, ss_nt = 0;
  common.attach(ss);
  ss->add_option("--ts-us", ss_ts, "storage time [us]");
  ss->add_option("--read-ic", ss_ric, "read intensity [mW/cm2]");
  ss->add_option("--read-duration-us", ss_rdur, "read duration [us]");
  ss->add_option("--delta-min-khz", ss_dmin, "sweep start [kHz]");
  ss->add_option("--delta-max-khz", ss_dmax, "sweep end [kHz]");
  ss->add_option("--n-delta", ss_nd, "sweep points (>= 32)");
  ss->add_option("--n-time", ss_nt, "trace samples per point");

  // retrieve
  auto* rt = app.add_subcommand("retrieve",
                                "run a write-store-read pulse sequence");
  std::string rt_seq;
  int rt_n = 0;
  common.attach(rt);
  rt->add_option("--seq", rt_seq, "pulse sequence file")->required();
  rt->add_option("--n", rt_n, "trace samples (>= 16)");

  // montecarlo
  auto* mc = app.add_subcommand("montecarlo",
                                "Monte Carlo grating decay vs analytic law");
  int mc_atoms = 100000, mc_times = 64;
  double mc_tmax = 0.0;
  common.attach(mc);
  mc->add_option("--n-atoms", mc_atoms, "sample size (>= 1000)");
  mc->add_option("--t-max-us", mc_tmax, "trace end [us], default 3 tau_g");
  mc->add_option("--n-times", mc_times, "time samples");

  // pump
  auto* pm = app.add_subcommand("pump", "optical pumping on the F=4 manifold");
  double pm_i = 120.0, pm_det = -30.0, pm_dur = 100.0;
  std::string pm_pol = "sigma+";
  common.attach(pm);
  pm->add_option("--i", pm_i, "pump intensity [mW/cm2]");
  pm->add_option("--detuning-mhz", pm_det, "optical detuning [MHz]");
  pm->add_option("--duration-us", pm_dur, "pumping time [us]");
  pm->add_option("--pol", pm_pol, "sigma+ | sigma-");

  // microwave
  auto* mw = app.add_subcommand("microwave",
                                "hyperfine microwave population scan");
  double mw_b = 150.0, mw_lw = 10.0, mw_span = 500.0;
  int mw_n = 1001;
  std::string mw_init = "uniform";
  common.attach(mw);
  mw->add_option("--b-mg", mw_b, "dc magnetic field [mG]");
  mw->add_option("--linewidth-khz", mw_lw, "rendered Lorentzian FWHM [kHz]");
  mw->add_option("--init", mw_init, "uniform | stretched | pumped");
  mw->add_option("--span-khz", mw_span, "scan half-span [kHz]");
  mw->add_option("--n", mw_n, "scan points");

  // fit
  auto* ft = app.add_subcommand("fit", "least-squares fit of a CSV curve");
  std::string ft_model, ft_in, ft_ycol, ft_json;
  bool ft_temp = false;
  common.attach(ft);
  ft->add_option("--model", ft_model, "gaussian-derivative | gaussian-decay")
      ->required();
  ft->add_option("--in", ft_in, "input CSV (x = first column)")->required();
  ft->add_option("--ycol", ft_ycol, "y column name (default: second column)");
  ft->add_option("--json", ft_json, "also write a JSON record here");
  ft->add_flag("--temperature", ft_temp,
               "derive the ensemble temperature from the fitted shape");

  // selftest
  auto* st = app.add_subcommand("selftest",
                                "run the full acceptance suite");
  common.attach(st);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // CLI11 exit code 0 means --help and friends
    std::ostringstream dummy;
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (sp->parsed())
      return cmd_spectrum(common, sp_ic, sp_ip, sp_dmin, sp_dmax, sp_n, out);
    if (ss->parsed())
      return cmd_storage_spectrum(common, ss_ts, ss_ric, ss_rdur, ss_dmin,
                                  ss_dmax, ss_nd, ss_nt, out);
    if (rt->parsed()) return cmd_retrieve(common, rt_seq, rt_n, out);
    if (mc->parsed())
      return cmd_montecarlo(common, mc_atoms, mc_tmax, mc_times, out);
    if (pm->parsed())
      return cmd_pump(common, pm_i, pm_det, pm_dur, pm_pol, out);
    if (mw->parsed())
      return cmd_microwave(common, mw_b, mw_lw, mw_init, mw_span, mw_n, out);
    if (ft->parsed())
      return cmd_fit(common, ft_model, ft_in, ft_ycol, ft_json, ft_temp, out);
    if (st->parsed()) {
      const ScenarioConfig cfg = common.resolve();
      const int failures = acceptance::run_all(common.out_dir(cfg), out);
      return failures == 0 ? 0 : 1;
    }
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace rir
