#include "rir/protocol.hpp"

#include <cmath>
#include <stdexcept>

#include "rir/constants.hpp"

namespace rir {

void ReadWaveform::validate() const {
  if (intensity < 0.0)
    throw std::domain_error("read: intensity must be >= 0");
  if (!(duration > 0.0))
    throw std::domain_error("read: duration must be > 0");
  if (kind == ReadKind::square_modulated) {
    if (!(period > 0.0))
      throw std::domain_error("read: square waveform needs period > 0");
    if (!(duty > 0.0) || !(duty < 1.0))
      throw std::domain_error("read: duty must lie in (0, 1)");
  }
}

double ReadWaveform::value_at(double t) const {
  if (kind == ReadKind::continuous) return intensity;
  // on-window [0, duty*period) at the start of every period
  const double phase = std::fmod(t, period);
  return phase < duty * period ? intensity : 0.0;
}

GratingState write_grating(const RirParams& params,
                           const MemoryTimeline& timeline) {
  if (!(timeline.write_duration > 0.0))
    throw std::domain_error("write_grating: write_duration must be > 0");

  const double omega_c = rabi_frequency(params.coupling.intensity, params.species);
  const double omega_p = rabi_frequency(params.probe.intensity, params.species);
  const double depth =
      optical_potential_depth(omega_c, omega_p, params.coupling.detuning);
  const double contrast =
      equilibrium_bunching(depth, params.ensemble.temperature);

  // Only atoms co-moving with the walking pattern at v = delta/q bunch;
  // their Maxwell-Boltzmann weight is the Gaussian write factor.
  const double qu = params.geometry.q * params.ensemble.u;
  const double x = timeline.write_delta / qu;
  GratingState state{contrast * std::exp(-x * x), params.geometry.q,
                     params.ensemble, timeline.write_duration};
  state.validate();
  return state;
}

RetrievalTrace retrieve(const GratingState& state,
                        const MemoryTimeline& timeline, int n_samples,
                        double eta0) {
  state.validate();
  timeline.read.validate();
  if (n_samples < 16)
    throw std::invalid_argument("retrieve: need n_samples >= 16");
  if (timeline.storage_time < 0.0)
    throw std::domain_error("retrieve: storage_time must be >= 0");
  if (eta0 < 0.0) throw std::domain_error("retrieve: eta0 must be >= 0");

  const double tau_g = std::sqrt(2.0) / (state.q * state.ensemble.u);
  const double b1sq = state.b1 * state.b1;

  RetrievalTrace trace;
  trace.times = uniform_grid(0.0, timeline.read.duration, n_samples);
  trace.intensity.resize(trace.times.size());
  const int n = static_cast<int>(trace.times.size());
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const double t = trace.times[k];
    const double envelope_arg = (timeline.storage_time + t) / tau_g;
    trace.intensity[k] = eta0 * timeline.read.value_at(t) * b1sq *
                         std::exp(-envelope_arg * envelope_arg);
  }
  trace.grating_before = state;
  trace.grating_after =
      evolve_ballistic(state, timeline.storage_time + timeline.read.duration);
  return trace;
}

RetrievalTrace multi_read(const GratingState& state,
                          const MemoryTimeline& timeline, int n_samples,
                          double eta0) {
  if (timeline.read.kind != ReadKind::square_modulated)
    throw std::invalid_argument("multi_read: waveform must be square");
  return retrieve(state, timeline, n_samples, eta0);
}

double retrieved_energy(const RetrievalTrace& trace) {
  if (trace.times.size() < 2)
    throw std::invalid_argument("retrieved_energy: need at least 2 samples");
  double e = 0.0;
  for (std::size_t i = 1; i < trace.times.size(); ++i)
    e += 0.5 * (trace.intensity[i] + trace.intensity[i - 1]) *
         (trace.times[i] - trace.times[i - 1]);
  return e;
}

SpectrumCurve storage_spectrum(const RirParams& params,
                               const MemoryTimeline& timeline,
                               double delta_min, double delta_max, int n_delta,
                               int n_samples, double eta0) {
  if (n_delta < 32)
    throw std::invalid_argument("storage_spectrum: need n_delta >= 32");
  if (!(delta_min < delta_max))
    throw std::invalid_argument("storage_spectrum: need delta_min < delta_max");
  SpectrumCurve curve;
  curve.delta_grid = uniform_grid(delta_min, delta_max, n_delta);
  curve.values.resize(curve.delta_grid.size());
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n_delta; ++i) {
    const auto k = static_cast<std::size_t>(i);
    MemoryTimeline tl = timeline;
    tl.write_delta = curve.delta_grid[k];
    const GratingState g = write_grating(params, tl);
    curve.values[k] = retrieved_energy(retrieve(g, tl, n_samples, eta0));
  }
  curve.validate();
  return curve;
}

}  // namespace rir
