#include "rir/grating.hpp"

#include <cmath>
#include <stdexcept>

#include "rir/constants.hpp"
#include "rir/rng.hpp"

namespace rir {

namespace c = constants;

void GratingState::validate() const {
  if (!(b1 >= 0.0) || !(b1 <= 1.0))
    throw std::domain_error("grating: b1 must lie in [0, 1]");
  if (!(q > 0.0)) throw std::domain_error("grating: q must be > 0");
}

double bessel_i1_over_i0(double x) {
  if (x < 0.0) throw std::domain_error("bessel_i1_over_i0: x must be >= 0");
  if (x == 0.0) return 0.0;
  // r_nu = I_nu/I_{nu-1} satisfies r_nu = x/(2 nu + x r_{nu+1}); run the
  // recurrence backward from a zero tail, doubling the depth until two
  // evaluations agree.
  int depth = 32 + static_cast<int>(x);
  double prev = -1.0;
  for (int round = 0; round < 24; ++round) {
    double r = 0.0;
    for (int nu = depth; nu >= 1; --nu) r = x / (2.0 * nu + x * r);
    if (prev >= 0.0 && std::abs(r - prev) <= 1e-14 * r) return r;
    prev = r;
    depth *= 2;
  }
  return prev;
}

double equilibrium_bunching(double depth, double temperature) {
  if (depth < 0.0)
    throw std::domain_error("equilibrium_bunching: depth must be >= 0");
  if (!(temperature > 0.0))
    throw std::domain_error("equilibrium_bunching: temperature must be > 0");
  const double kappa = depth / (2.0 * c::k_boltzmann * temperature);
  return bessel_i1_over_i0(kappa);
}

double storage_lifetime(const BeamGeometry& geometry,
                        const ThermalEnsemble& ensemble) {
  return std::sqrt(2.0) / (geometry.q * ensemble.u);
}

namespace {

void check_times(std::span<const double> times) {
  if (times.empty()) throw std::invalid_argument("decay: empty time grid");
  if (!(times[0] >= 0.0))
    throw std::invalid_argument("decay: times must start at t >= 0");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] >= times[i - 1]))
      throw std::invalid_argument("decay: times must be sorted ascending");
}

// Mean of exp(i q v t) over the sample, summed block-by-block in fixed
// index order.
double phase_average(const std::vector<double>& velocities, double q,
                     double t) {
  constexpr std::size_t block = 4096;
  const std::size_t n = velocities.size();
  double re = 0.0, im = 0.0;
  for (std::size_t b0 = 0; b0 < n; b0 += block) {
    const std::size_t b1 = std::min(b0 + block, n);
    double bre = 0.0, bim = 0.0;
    for (std::size_t k = b0; k < b1; ++k) {
      const double phase = q * velocities[k] * t;
      bre += std::cos(phase);
      bim += std::sin(phase);
    }
    re += bre;
    im += bim;
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  return std::hypot(re * inv_n, im * inv_n);
}

DecayCurve monte_carlo_impl(const GratingState& state, int n_atoms,
                            std::uint64_t seed, std::span<const double> times,
                            bool parallel) {
  state.validate();
  check_times(times);
  if (n_atoms < 1000)
    throw std::invalid_argument("monte_carlo_decay: need n_atoms >= 1000");

  // 1-D Maxwell-Boltzmann along q: density ~ exp(-v^2/u^2), sigma = u/sqrt2.
  const double sigma = state.ensemble.u / std::sqrt(2.0);
  std::vector<double> v(static_cast<std::size_t>(n_atoms));
#pragma omp parallel for schedule(static) if (parallel)
  for (int i = 0; i < n_atoms; ++i)
    v[static_cast<std::size_t>(i)] =
        sigma * gaussian_sample(seed, static_cast<std::uint64_t>(i));

  DecayCurve curve;
  curve.times.assign(times.begin(), times.end());
  const int nt = static_cast<int>(times.size());
  curve.amplitude.resize(times.size());
  curve.intensity.resize(times.size());
#pragma omp parallel for schedule(static) if (parallel)
  for (int j = 0; j < nt; ++j) {
    const auto k = static_cast<std::size_t>(j);
    const double a = phase_average(v, state.q, curve.times[k]);
    curve.amplitude[k] = a;
    curve.intensity[k] = a * a;
  }
  return curve;
}

}  // namespace

DecayCurve analytic_decay(const GratingState& state,
                          std::span<const double> times) {
  state.validate();
  check_times(times);
  const double qu = state.q * state.ensemble.u;
  DecayCurve curve;
  curve.times.assign(times.begin(), times.end());
  curve.amplitude.reserve(times.size());
  curve.intensity.reserve(times.size());
  for (double t : times) {
    const double arg = qu * t / 2.0;
    const double a = std::exp(-arg * arg);
    curve.amplitude.push_back(a);
    curve.intensity.push_back(a * a);
  }
  return curve;
}

DecayCurve monte_carlo_decay(const GratingState& state, int n_atoms,
                             std::uint64_t seed,
                             std::span<const double> times) {
  return monte_carlo_impl(state, n_atoms, seed, times, true);
}

DecayCurve monte_carlo_decay_serial(const GratingState& state, int n_atoms,
                                    std::uint64_t seed,
                                    std::span<const double> times) {
  return monte_carlo_impl(state, n_atoms, seed, times, false);
}

GratingState evolve_ballistic(const GratingState& state, double dt) {
  if (dt < 0.0) throw std::domain_error("evolve_ballistic: dt must be >= 0");
  const double arg = state.q * state.ensemble.u * dt / 2.0;
  GratingState out = state;
  out.b1 = state.b1 * std::exp(-arg * arg);
  out.written_at = state.written_at + dt;
  return out;
}

}  // namespace rir
