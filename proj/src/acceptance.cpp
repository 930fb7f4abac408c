#include "rir/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <vector>

#include "rir/constants.hpp"
#include "rir/csv.hpp"
#include "rir/fitting.hpp"
#include "rir/grating.hpp"
#include "rir/protocol.hpp"
#include "rir/pumping.hpp"
#include "rir/rng.hpp"
#include "rir/spectrum.hpp"

namespace rir::acceptance {

namespace c = constants;

namespace {

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

struct Check {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

struct Fixture {
  AtomSpecies species = AtomSpecies::cesium_d2();
  BeamGeometry geometry = grating_geometry(2.0 * c::pi / 180.0, 852.347e-9);
  ThermalEnsemble ensemble;
  RirParams params;
  double qu;
  double tau_g;

  Fixture() {
    ensemble = thermal_ensemble(320e-6, species);
    params = RirParams{species,
                       geometry,
                       ensemble,
                       Beam{1200.0, -c::two_pi * 30e6, Polarization::sigma_plus},
                       Beam{2.0, -c::two_pi * 30e6, Polarization::sigma_plus}};
    qu = geometry.q * ensemble.u;
    tau_g = storage_lifetime(geometry, ensemble);
  }
};

double rel_err(double value, double reference) {
  return std::abs(value - reference) / std::abs(reference);
}

// --- criterion 1: lifetime formula and its inversion ---
Check check_lifetime(const Fixture& fx) {
  Check ck;
  const auto t0 = std::chrono::steady_clock::now();
  const double tau = storage_lifetime(fx.geometry, fx.ensemble);
  const double temp = temperature_from_lifetime(tau, fx.geometry, fx.species);
  const auto t1 = std::chrono::steady_clock::now();
  const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

  ck.require(rel_err(tau, 27.5e-6) <= 0.02,
             "tau_g=" + num(tau * 1e6) + "us vs 27.5us +-2%");
  ck.require(rel_err(temp, 320e-6) <= 0.01,
             "inverted T=" + num(temp * 1e6) + "uK vs 320uK +-1%");
  ck.require(ms < 1.0, num(ms) + "ms (<1ms)");
  return ck;
}

// --- criterion 2: potential depth and thermal energy ---
Check check_potential(const Fixture& fx) {
  Check ck;
  const double gamma = fx.species.gamma;
  const double depth =
      optical_potential_depth(120.0 * gamma, 0.2 * gamma, c::two_pi * 30e6);
  const double depth_hg = depth / (c::hbar * gamma);
  ck.require(std::abs(depth_hg - 2.08) < 1e-6,
             "U=" + num(depth_hg) + " hbarGamma (formula 2.08)");
  ck.require(rel_err(depth_hg, 2.0) <= 0.05, "within 5% of 2.0");

  const double t_doppler = fx.species.doppler_temperature();
  const double thermal_hg =
      c::k_boltzmann * 2.5 * t_doppler / (c::hbar * gamma);
  ck.require(std::abs(thermal_hg - 1.25) < 1e-12,
             "kB(2.5 T_D)=" + num(thermal_hg) + " hbarGamma");
  ck.require(std::abs(thermal_hg - 1.2) <= 0.05 * 1.2, "within 5% of 1.2");
  ck.require(thermal_vs_potential(2.5 * t_doppler, 2.0 * c::hbar * gamma) < 1.0,
             "bunching regime flagged");
  return ck;
}

// --- criterion 3: Monte Carlo oracle against the analytic law ---
Check check_monte_carlo(const Fixture& fx) {
  Check ck;
  const auto t0 = std::chrono::steady_clock::now();
  const GratingState state{1.0, fx.geometry.q, fx.ensemble, 0.0};
  const auto times = uniform_grid(0.0, 3.0 * fx.tau_g, 64);

  double worst = 0.0;
  DecayCurve first;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const DecayCurve mc = monte_carlo_decay(state, 100000, seed, times);
    const DecayCurve exact = analytic_decay(state, times);
    if (seed == 1) first = mc;
    for (std::size_t i = 0; i < times.size(); ++i)
      worst = std::max(worst, std::abs(mc.amplitude[i] - exact.amplitude[i]));
  }
  ck.require(worst < 0.01, "max|MC-analytic|=" + num(worst) + " (<0.01)");

  const FitResult fit =
      fit_curve(FitModel::gaussian_decay, first.times, first.intensity);
  ck.require(fit.converged, "decay fit converged");
  ck.require(rel_err(fit.params[2], fx.tau_g) <= 0.02,
             "fitted tau err=" + num(100.0 * rel_err(fit.params[2], fx.tau_g)) +
                 "% (<2%)");
  const auto t1 = std::chrono::steady_clock::now();
  const double sec = std::chrono::duration<double>(t1 - t0).count();
  ck.require(sec < 5.0, num(sec) + "s (<5s)");
  return ck;
}

// --- criterion 4: spectrum symmetry, linewidth, intensity invariance ---
Check check_spectrum(const Fixture& fx) {
  Check ck;
  const int n = 4097;
  const double span = 4.0 * fx.qu;
  const auto grid = uniform_grid(-span, span, n);

  bool odd_exact = true;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double sum = rir_lineshape(grid[i], fx.params) +
                       rir_lineshape(grid[grid.size() - 1 - i], fx.params);
    if (sum != 2.0) odd_exact = false;
  }
  ck.require(odd_exact, "T(d)+T(-d)==2 bitwise");

  const SpectrumCurve curve = transmission_spectrum(fx.params, -span, span, n);
  const double width = peak_to_peak_linewidth(curve);
  const double expected = std::sqrt(2.0) * fx.qu;
  const double step = 2.0 * span / (n - 1);
  ck.require(std::abs(width - expected) <= 0.5 * step,
             "p2p=" + num(width / c::two_pi / 1e3) + "kHz vs sqrt2 qu +-h/2");
  ck.require(fx.species.gamma / width > 300.0,
             "subnatural x" + num(fx.species.gamma / width));

  double widths[3];
  int k = 0;
  for (double ic : {400.0, 800.0, 1200.0}) {
    RirParams p = fx.params;
    p.coupling.intensity = ic;
    widths[k++] = peak_to_peak_linewidth(transmission_spectrum(p, -span, span, n));
  }
  ck.require(widths[0] == widths[1] && widths[1] == widths[2],
             "width bit-identical for I_C in {40,80,120} mW/cm2");
  return ck;
}

// --- criterion 5: reading does not deplete the grating ---
Check check_nondestructive(const Fixture& fx) {
  Check ck;
  MemoryTimeline tl;
  tl.write_duration = 100e-6;
  tl.write_delta = 0.0;
  tl.storage_time = 10e-6;
  tl.read = ReadWaveform{ReadKind::continuous, 1400.0, 0.0, 0.0, 200e-6};
  const GratingState state = write_grating(fx.params, tl);
  const int n = 512;

  std::vector<RetrievalTrace> traces;
  for (double ir : {350.0, 700.0, 1400.0}) {
    MemoryTimeline t = tl;
    t.read.intensity = ir;
    traces.push_back(retrieve(state, t, n));
  }
  double shape_diff = 0.0;
  const auto normalize = [](const RetrievalTrace& tr) {
    const double peak = *std::max_element(tr.intensity.begin(), tr.intensity.end());
    std::vector<double> out(tr.intensity.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = tr.intensity[i] / peak;
    return out;
  };
  const auto ref = normalize(traces[0]);
  for (std::size_t k = 1; k < traces.size(); ++k) {
    const auto other = normalize(traces[k]);
    for (std::size_t i = 0; i < ref.size(); ++i)
      shape_diff = std::max(shape_diff, std::abs(ref[i] - other[i]));
  }
  ck.require(shape_diff <= 1e-12,
             "normalized shape spread=" + num(shape_diff) + " (<=1e-12)");

  bool after_same = true;
  for (const auto& tr : traces)
    if (tr.grating_after.b1 != traces[0].grating_after.b1) after_same = false;
  const GratingState free_flight =
      evolve_ballistic(state, tl.storage_time + tl.read.duration);
  ck.require(after_same && traces[0].grating_after.b1 == free_flight.b1,
             "post-read b1 equals free flight bitwise");

  // modulated read: every on-window carries the continuous-read energy
  MemoryTimeline tsq = tl;
  tsq.read = ReadWaveform{ReadKind::square_modulated, 1400.0, 20e-6, 0.5, 200e-6};
  const RetrievalTrace square = multi_read(state, tsq, n);
  const RetrievalTrace cont = traces[2];  // same plateau intensity
  double window_err = 0.0;
  double on_sum = 0.0, off_sum = 0.0, total = 0.0;
  std::size_t i = 0;
  while (i + 1 < square.times.size()) {
    total += 0.5 * (cont.intensity[i] + cont.intensity[i + 1]) *
             (square.times[i + 1] - square.times[i]);
    const bool on = square.intensity[i] > 0.0 && square.intensity[i + 1] > 0.0;
    const double seg = 0.5 *
                       ((on ? square.intensity[i] : cont.intensity[i]) +
                        (on ? square.intensity[i + 1] : cont.intensity[i + 1])) *
                       (square.times[i + 1] - square.times[i]);
    const double seg_cont = 0.5 * (cont.intensity[i] + cont.intensity[i + 1]) *
                            (square.times[i + 1] - square.times[i]);
    if (on) {
      on_sum += seg;
      window_err = std::max(window_err, std::abs(seg - seg_cont) /
                                            std::max(seg_cont, 1e-300));
    } else {
      off_sum += seg_cont;
    }
    ++i;
  }
  ck.require(window_err <= 1e-12,
             "on-window energy err=" + num(window_err) + " (<=1e-12)");
  ck.require(std::abs(on_sum + off_sum - total) <= 1e-12 * total,
             "on+off partitions the continuous energy");
  return ck;
}

// --- criterion 6: storage spectrum is a subnatural Gaussian peaked at 0 ---
Check check_storage_spectrum(const Fixture& fx) {
  Check ck;
  MemoryTimeline tl;
  tl.write_duration = 100e-6;
  tl.storage_time = 10e-6;
  tl.read = ReadWaveform{ReadKind::continuous, 1400.0, 0.0, 0.0, 150e-6};
  const int n_delta = 129;
  const double span = 3.0 * fx.qu;
  const SpectrumCurve sweep =
      storage_spectrum(fx.params, tl, -span, span, n_delta, 257);

  const auto peak_it = std::max_element(sweep.values.begin(), sweep.values.end());
  const auto i_peak = static_cast<std::size_t>(peak_it - sweep.values.begin());
  ck.require(sweep.delta_grid[i_peak] == 0.0, "peak at delta=0");

  double model_err = 0.0;
  for (std::size_t i = 0; i < sweep.values.size(); ++i) {
    const double x = sweep.delta_grid[i] / fx.qu;
    const double expected = std::exp(-2.0 * x * x);
    model_err =
        std::max(model_err, std::abs(sweep.values[i] / *peak_it - expected));
  }
  ck.require(model_err <= 1e-9,
             "energy(d)/energy(0) vs exp(-2d^2/(qu)^2): max err " + num(model_err));

  // 1/e half-width from linear interpolation on the ratio curve
  const double target = std::exp(-1.0);
  double half_width = 0.0;
  for (std::size_t i = i_peak; i + 1 < sweep.values.size(); ++i) {
    const double a = sweep.values[i] / *peak_it;
    const double b = sweep.values[i + 1] / *peak_it;
    if (a >= target && b < target) {
      const double f = (a - target) / (a - b);
      half_width = sweep.delta_grid[i] +
                   f * (sweep.delta_grid[i + 1] - sweep.delta_grid[i]);
      break;
    }
  }
  const double step = sweep.delta_grid[1] - sweep.delta_grid[0];
  ck.require(std::abs(half_width - fx.qu / std::sqrt(2.0)) <= step,
             "1/e half-width=" + num(half_width / c::two_pi / 1e3) +
                 "kHz vs qu/sqrt2");
  const double fwhm = fx.qu * std::sqrt(2.0 * std::log(2.0));
  ck.require(fwhm / fx.species.gamma < 5e-3,
             "FWHM/Gamma=" + num(fwhm / fx.species.gamma) + " (subnatural)");
  return ck;
}

// --- criterion 7: microwave peak structure before/after pumping ---
Check check_microwave(const Fixture& fx) {
  Check ck;
  const double b_field = 15e-6;  // 150 mG
  const MicrowaveSpectrum uniform = microwave_spectrum(
      ZeemanPopulations::uniform_f4(), b_field, fx.species, 5e3);
  ck.require(uniform.frequencies.size() == 8,
             std::to_string(uniform.frequencies.size()) + " resonances (want 8)");
  const double unit = c::bohr_magneton * b_field / (4.0 * c::planck);
  bool offsets_ok = uniform.frequencies.size() == 8;
  for (std::size_t i = 0; offsets_ok && i < uniform.frequencies.size(); ++i) {
    const double expected = (2.0 * static_cast<double>(i) - 7.0) * unit;
    if (std::abs(uniform.frequencies[i] - expected) > 1e-9 * std::abs(7.0 * unit))
      offsets_ok = false;
  }
  ck.require(offsets_ok, "offsets are odd multiples of muB B/(4h)");
  if (uniform.frequencies.size() >= 2) {
    const double spacing = uniform.frequencies[1] - uniform.frequencies[0];
    ck.require(rel_err(spacing, 105e3) < 1e-3,
               "spacing=" + num(spacing / 1e3) + "kHz (105kHz +-0.1%)");
  }

  const Beam pump{1200.0, -c::two_pi * 30e6, Polarization::sigma_plus};
  const ZeemanPopulations pumped = pump_evolution(
      ZeemanPopulations::uniform_f4(), pump, 100e-6, fx.species);
  ck.require(pumped.p4[8] > 0.99, "p4[+4]=" + num(pumped.p4[8]) + " (>0.99)");

  const MicrowaveSpectrum after =
      microwave_spectrum(pumped, b_field, fx.species, 5e3);
  const double amax =
      *std::max_element(after.amplitudes.begin(), after.amplitudes.end());
  int dominant = 0;
  for (double a : after.amplitudes)
    if (a >= 0.5 * amax) ++dominant;
  ck.require(dominant == 1,
             std::to_string(dominant) + " dominant peak after pumping");
  return ck;
}

// --- criterion 8: fit round trips, noiseless and at 1% noise ---
Check check_fit_roundtrip(const Fixture& fx) {
  Check ck;

  // noiseless spectrum -> temperature
  {
    const int n = 801;
    const SpectrumCurve curve =
        transmission_spectrum(fx.params, -3.0 * fx.qu, 3.0 * fx.qu, n);
    const FitResult fit =
        fit_curve(FitModel::gaussian_derivative, curve.delta_grid, curve.values);
    const double temp =
        temperature_from_width(fit.params[2], fx.geometry, fx.species);
    ck.require(fit.converged && rel_err(temp, 320e-6) <= 1e-3,
               "noiseless spectrum T err=" +
                   num(100.0 * rel_err(temp, 320e-6)) + "% (<0.1%)");
  }

  // noiseless decay -> tau
  MemoryTimeline tl;
  tl.write_duration = 100e-6;
  tl.storage_time = 0.0;
  tl.read = ReadWaveform{ReadKind::continuous, 1400.0, 0.0, 0.0, 3.0 * fx.tau_g};
  const GratingState state = write_grating(fx.params, tl);
  {
    const RetrievalTrace trace = retrieve(state, tl, 301);
    const FitResult fit =
        fit_curve(FitModel::gaussian_decay, trace.times, trace.intensity);
    ck.require(fit.converged && rel_err(fit.params[2], fx.tau_g) <= 1e-3,
               "noiseless decay tau err=" +
                   num(100.0 * rel_err(fit.params[2], fx.tau_g)) + "% (<0.1%)");
  }

  // seeded 1%-noise trials, 95/100 within 2%
  const int trials = 100;
  const int n_pts = 801;
  int ok_deriv = 0, ok_decay = 0;
  const SpectrumCurve clean =
      transmission_spectrum(fx.params, -3.0 * fx.qu, 3.0 * fx.qu, n_pts);
  const double height =
      *std::max_element(clean.values.begin(), clean.values.end()) - 1.0;
  const RetrievalTrace clean_decay = retrieve(state, tl, n_pts);
  const double peak = *std::max_element(clean_decay.intensity.begin(),
                                        clean_decay.intensity.end());
  for (int trial = 0; trial < trials; ++trial) {
    const std::uint64_t sd =
        derive_stream_seed(42, "acceptance-noise", static_cast<std::uint64_t>(trial));

    std::vector<double> y = clean.values;
    for (std::size_t i = 0; i < y.size(); ++i)
      y[i] += 0.01 * height * gaussian_sample(sd, i);
    const FitResult fd =
        fit_curve(FitModel::gaussian_derivative, clean.delta_grid, y);
    const double a_true =
        fx.params.amplitude_scale / fx.qu;  // I_C at reference intensity
    const bool deriv_ok =
        fd.converged && rel_err(fd.params[2], fx.qu) <= 0.02 &&
        rel_err(fd.params[0], a_true) <= 0.02 &&
        std::abs(fd.params[1]) <= 0.02 * fx.qu &&
        std::abs(fd.params[3] - 1.0) <= 0.02 * height;
    if (deriv_ok) ++ok_deriv;

    std::vector<double> yd = clean_decay.intensity;
    for (std::size_t i = 0; i < yd.size(); ++i)
      yd[i] += 0.01 * peak * gaussian_sample(sd ^ 0x5555555555555555ULL, i);
    const FitResult fdec =
        fit_curve(FitModel::gaussian_decay, clean_decay.times, yd);
    const bool decay_ok =
        fdec.converged && rel_err(fdec.params[2], fx.tau_g) <= 0.02 &&
        rel_err(fdec.params[0], peak) <= 0.02 &&
        std::abs(fdec.params[1]) <= 0.02 * fx.tau_g;
    if (decay_ok) ++ok_decay;
  }
  ck.require(ok_deriv >= 95, "derivative noise trials " +
                                 std::to_string(ok_deriv) + "/100 (>=95)");
  ck.require(ok_decay >= 95,
             "decay noise trials " + std::to_string(ok_decay) + "/100 (>=95)");

  // dual-pathway temperature consistency at 1% noise
  {
    const std::uint64_t sd = derive_stream_seed(42, "acceptance-dual", 0);
    std::vector<double> y = clean.values;
    for (std::size_t i = 0; i < y.size(); ++i)
      y[i] += 0.01 * height * gaussian_sample(sd, i);
    const FitResult fd =
        fit_curve(FitModel::gaussian_derivative, clean.delta_grid, y);
    const double t_width =
        temperature_from_width(fd.params[2], fx.geometry, fx.species);

    std::vector<double> yd = clean_decay.intensity;
    for (std::size_t i = 0; i < yd.size(); ++i)
      yd[i] += 0.01 * peak * gaussian_sample(sd ^ 0x3333333333333333ULL, i);
    const FitResult fdec =
        fit_curve(FitModel::gaussian_decay, clean_decay.times, yd);
    const double t_decay = temperature_from_lifetime(fdec.params[2],
                                                     fx.geometry, fx.species);
    ck.require(std::abs(t_width - t_decay) <= 0.01 * 320e-6,
               "dual-pathway T: " + num(t_width * 1e6) + "uK vs " +
                   num(t_decay * 1e6) + "uK (within 1%)");
  }
  return ck;
}

// --- criterion 9: lifetime-angle scaling ---
Check check_angle_scaling(const Fixture& fx) {
  Check ck;
  double taus[3], consts[3];
  int k = 0;
  for (double deg : {1.0, 2.0, 4.0}) {
    const double theta = deg * c::pi / 180.0;
    const BeamGeometry g = grating_geometry(theta, fx.species.wavelength);
    taus[k] = storage_lifetime(g, fx.ensemble);
    consts[k] = taus[k] * std::sin(theta / 2.0);
    ++k;
  }
  ck.require(taus[0] > taus[1] && taus[1] > taus[2],
             "tau_g decreases with angle");
  const double drift = std::max(std::abs(consts[1] - consts[0]),
                                std::abs(consts[2] - consts[0])) /
                       consts[0];
  ck.require(drift <= 1e-9,
             "tau_g sin(theta/2) drift=" + num(drift) + " (<=1e-9)");
  return ck;
}

// --- criterion 10: selftest artifacts are byte-identical across runs ---
Check check_determinism(const std::string& outdir) {
  Check ck;
  const auto first = build_artifacts();
  const auto second = build_artifacts();
  bool identical = first.size() == second.size();
  if (identical)
    for (const auto& [name, bytes] : first) {
      const auto it = second.find(name);
      if (it == second.end() || it->second != bytes) {
        identical = false;
        break;
      }
    }
  ck.require(identical, std::to_string(first.size()) +
                            " artifacts byte-identical across rebuilds");

  std::filesystem::create_directories(outdir);
  for (const auto& [name, bytes] : first) {
    std::ofstream f(std::filesystem::path(outdir) / name, std::ios::binary);
    f << bytes;
    if (!f) ck.require(false, "write failed: " + name);
  }
  return ck;
}

}  // namespace

std::map<std::string, std::string> build_artifacts() {
  const Fixture fx;
  std::map<std::string, std::string> artifacts;

  // probe-transmission spectrum
  {
    const SpectrumCurve curve = transmission_spectrum(
        fx.params, -c::two_pi * 40e3, c::two_pi * 40e3, 513);
    std::vector<double> hz(curve.delta_grid.size());
    for (std::size_t i = 0; i < hz.size(); ++i)
      hz[i] = curve.delta_grid[i] / c::two_pi;
    artifacts["spectrum.csv"] =
        csv_to_string({"delta_hz", "transmission"}, {hz, curve.values});
  }

  MemoryTimeline tl;
  tl.write_duration = 100e-6;
  tl.storage_time = 10e-6;
  tl.read = ReadWaveform{ReadKind::continuous, 1400.0, 0.0, 0.0, 200e-6};

  // storage spectrum
  {
    const SpectrumCurve sweep = storage_spectrum(
        fx.params, tl, -3.0 * fx.qu, 3.0 * fx.qu, 129, 257);
    std::vector<double> hz(sweep.delta_grid.size());
    for (std::size_t i = 0; i < hz.size(); ++i)
      hz[i] = sweep.delta_grid[i] / c::two_pi;
    artifacts["storage_spectrum.csv"] =
        csv_to_string({"delta_hz", "energy"}, {hz, sweep.values});
  }

  // retrieval traces and the decay fit report
  const GratingState state = write_grating(fx.params, tl);
  {
    const RetrievalTrace cw = retrieve(state, tl, 512);
    std::vector<double> us(cw.times.size());
    for (std::size_t i = 0; i < us.size(); ++i) us[i] = cw.times[i] * 1e6;
    artifacts["retrieve_cw.csv"] =
        csv_to_string({"t_us", "intensity"}, {us, cw.intensity});

    MemoryTimeline tsq = tl;
    tsq.read =
        ReadWaveform{ReadKind::square_modulated, 1400.0, 20e-6, 0.5, 200e-6};
    const RetrievalTrace sq = multi_read(state, tsq, 512);
    artifacts["retrieve_square.csv"] =
        csv_to_string({"t_us", "intensity"}, {us, sq.intensity});

    const FitResult fit =
        fit_curve(FitModel::gaussian_decay, cw.times, cw.intensity);
    std::ostringstream rep;
    rep << "model=" << to_string(fit.model) << "\n"
        << "converged=" << (fit.converged ? "true" : "false") << "\n"
        << "iterations=" << fit.iterations << "\n"
        << "residual_norm=" << format_sig9(fit.residual_norm) << "\n";
    for (std::size_t j = 0; j < fit.names.size(); ++j)
      rep << fit.names[j] << "=" << format_sig9(fit.params[j]) << "\n";
    artifacts["fit_decay.txt"] = rep.str();
  }

  // Monte Carlo decay
  {
    const GratingState unit{1.0, fx.geometry.q, fx.ensemble, 0.0};
    const auto times = uniform_grid(0.0, 3.0 * fx.tau_g, 64);
    const DecayCurve mc = monte_carlo_decay(
        unit, 100000, derive_stream_seed(1, "selftest", 0), times);
    std::vector<double> us(times.size());
    for (std::size_t i = 0; i < us.size(); ++i) us[i] = times[i] * 1e6;
    artifacts["mc_decay.csv"] = csv_to_string(
        {"t_us", "amplitude", "intensity"}, {us, mc.amplitude, mc.intensity});
  }

  // microwave scans before and after pumping
  {
    const auto grid = uniform_grid(-500e3, 500e3, 1001);
    const auto render_to_csv = [&](const ZeemanPopulations& pops) {
      const MicrowaveSpectrum spec =
          microwave_spectrum(pops, 15e-6, fx.species, 10e3);
      const SpectrumCurve scan = render_microwave_scan(spec, grid);
      std::vector<double> khz(scan.delta_grid.size());
      for (std::size_t i = 0; i < khz.size(); ++i)
        khz[i] = scan.delta_grid[i] / 1e3;
      return csv_to_string({"offset_khz", "signal"}, {khz, scan.values});
    };
    artifacts["microwave_uniform.csv"] =
        render_to_csv(ZeemanPopulations::uniform_f4());

    const Beam pump{1200.0, -c::two_pi * 30e6, Polarization::sigma_plus};
    const ZeemanPopulations pumped = pump_evolution(
        ZeemanPopulations::uniform_f4(), pump, 100e-6, fx.species);
    artifacts["microwave_pumped.csv"] = render_to_csv(pumped);

    std::vector<double> mf(9), pop(9);
    for (int m = -4; m <= 4; ++m) {
      mf[static_cast<std::size_t>(m + 4)] = m;
      pop[static_cast<std::size_t>(m + 4)] =
          pumped.p4[static_cast<std::size_t>(m + 4)];
    }
    artifacts["pump_populations.csv"] =
        csv_to_string({"m_f", "population"}, {mf, pop});
  }

  return artifacts;
}

int run_all(const std::string& outdir, std::ostream& out) {
  const Fixture fx;
  const std::vector<std::pair<std::string, std::function<Check()>>> checks = {
      {"lifetime-formula", [&] { return check_lifetime(fx); }},
      {"potential-depth", [&] { return check_potential(fx); }},
      {"monte-carlo-oracle", [&] { return check_monte_carlo(fx); }},
      {"spectrum-properties", [&] { return check_spectrum(fx); }},
      {"non-destructive-read", [&] { return check_nondestructive(fx); }},
      {"storage-spectrum", [&] { return check_storage_spectrum(fx); }},
      {"microwave-structure", [&] { return check_microwave(fx); }},
      {"fit-round-trips", [&] { return check_fit_roundtrip(fx); }},
      {"angle-scaling", [&] { return check_angle_scaling(fx); }},
      {"determinism", [&] { return check_determinism(outdir); }},
  };

  int failures = 0;
  int index = 0;
  for (const auto& [name, fn] : checks) {
    ++index;
    Check ck;
    try {
      ck = fn();
    } catch (const std::exception& e) {
      ck.pass = false;
      ck.detail = std::string("exception: ") + e.what();
    }
    if (!ck.pass) ++failures;
    out << (ck.pass ? "[PASS] " : "[FAIL] ") << index << " " << name << ": "
        << ck.detail << "\n";
  }
  out << "acceptance: " << (checks.size() - static_cast<std::size_t>(failures))
      << "/" << checks.size() << " criteria passed\n";
  return failures;
}

}  // namespace rir::acceptance
