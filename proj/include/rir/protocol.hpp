#pragma once

#include "rir/grating.hpp"
#include "rir/spectrum.hpp"

// Write-store-read memory sequence. Reading diffracts off the density
// grating and returns the atom to its initial internal state, so the
// stored b1 follows the pure ballistic law no matter how often or how
// hard it is read.
namespace rir {

enum class ReadKind { continuous, square_modulated };

struct ReadWaveform {
  ReadKind kind = ReadKind::continuous;
  double intensity = 0.0;  // W/m^2 plateau
  double period = 0.0;     // s, square only
  double duty = 0.0;       // in (0, 1), square only
  double duration = 0.0;   // s

  void validate() const;
  // Plateau intensity gated by the on/off mask; t measured from read start.
  double value_at(double t) const;
};

struct MemoryTimeline {
  double write_duration = 0.0;  // s
  double write_delta = 0.0;     // rad/s, two-photon detuning during write
  double storage_time = 0.0;    // s, write end to read start
  ReadWaveform read;
};

struct RetrievalTrace {
  std::vector<double> times;      // s from read start
  std::vector<double> intensity;  // W/m^2-proportional
  GratingState grating_before;    // at write end
  GratingState grating_after;     // ballistically evolved to read end
};

// b1 = equilibrium_bunching(U, T) * exp(-delta^2/(qu)^2) with U from the
// write beams; the Gaussian factor is the Maxwell-Boltzmann weight of
// atoms co-moving with the walking interference pattern.
GratingState write_grating(const RirParams& params,
                           const MemoryTimeline& timeline);

// I_ret(t) = eta0 I_R(t) b1^2 exp(-((t_s + t)/tau_g)^2) on n_samples
// uniform points across the read window.
RetrievalTrace retrieve(const GratingState& state,
                        const MemoryTimeline& timeline, int n_samples,
                        double eta0 = 1.0);

// Square-modulated read; pulses share one Gaussian envelope.
RetrievalTrace multi_read(const GratingState& state,
                          const MemoryTimeline& timeline, int n_samples,
                          double eta0 = 1.0);

// Trapezoidal pulse area.
double retrieved_energy(const RetrievalTrace& trace);

// Retrieved-pulse energy versus write detuning, sampled on a uniform
// delta grid (computed delta-parallel).
SpectrumCurve storage_spectrum(const RirParams& params,
                               const MemoryTimeline& timeline,
                               double delta_min, double delta_max,
                               int n_delta, int n_samples, double eta0 = 1.0);

}  // namespace rir
