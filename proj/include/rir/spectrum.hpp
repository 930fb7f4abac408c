#pragma once

#include <vector>

#include "rir/physics.hpp"

// Probe-transmission spectrum synthesis: derivative-of-Gaussian lineshape
// with gain on the red side (delta < 0) and absorption on the blue side.
namespace rir {

// Sampled (x, value) series; the shared I/O currency of the toolkit.
// delta_grid holds two-photon detunings in rad/s for transmission spectra
// and plain Hz offsets for microwave scans.
struct SpectrumCurve {
  std::vector<double> delta_grid;
  std::vector<double> values;

  // strictly increasing grid, >= 32 points, finite values
  void validate() const;
};

// Uniform grid a..b inclusive; antisymmetric endpoints map to exactly
// antisymmetric grid points.
std::vector<double> uniform_grid(double a, double b, int n);

struct RirParams {
  AtomSpecies species;
  BeamGeometry geometry;
  ThermalEnsemble ensemble;
  Beam coupling;
  Beam probe;
  double amplitude_scale = default_amplitude_scale;  // A0, >= 0

  // Signal amplitude is linear in coupling intensity, referenced here.
  static constexpr double coupling_reference_intensity = 1200.0;  // W/m^2
  // Calibrated so the reference coupling intensity peaks at 30% gain.
  static const double default_amplitude_scale;
};

// T(delta) = 1 - A (delta/qu) exp(-delta^2/(qu)^2), A = A0 * I_C/I_ref.
// T(0) = 1; T > 1 for delta < 0 (gain), T < 1 for delta > 0 (absorption).
double rir_lineshape(double delta, const RirParams& params);

// Samples rir_lineshape on a uniform grid of n >= 32 points.
// The parallel kernel and the serial reference are bitwise identical.
SpectrumCurve transmission_spectrum(const RirParams& params, double delta_min,
                                    double delta_max, int n);
SpectrumCurve transmission_spectrum_serial(const RirParams& params,
                                           double delta_min, double delta_max,
                                           int n);

// Absorption-peak position minus gain-peak position (positive). Throws
// std::domain_error when an extremum sits on the grid boundary.
double peak_to_peak_linewidth(const SpectrumCurve& curve);

}  // namespace rir
