#pragma once

#include <string>

// Physical core: species constants, beam/grating kinematics and the
// optical-potential arithmetic used by the other modules. All quantities
// are SI; frequencies and detunings are angular (rad/s). Types are
// immutable after construction and all functions are pure.
namespace rir {

struct AtomSpecies {
  double mass;                 // kg
  double wavelength;           // m, optical transition
  double gamma;                // rad/s, excited-state relaxation rate
  double i_sat;                // W/m^2, stretched-transition saturation
  double g_f_upper;            // Lande factor, upper ground hyperfine level
  double g_f_lower;            // Lande factor, lower ground hyperfine level
  double hyperfine_splitting;  // Hz

  // hbar*Gamma/(2 kB)
  double doppler_temperature() const;

  // Throws std::domain_error when a field is out of range.
  void validate() const;

  static AtomSpecies cesium_d2();
};

enum class Polarization { sigma_plus, sigma_minus, linear };

std::string to_string(Polarization p);

struct Beam {
  double intensity = 0.0;  // W/m^2
  double detuning = 0.0;   // rad/s from optical resonance, signed
  Polarization polarization = Polarization::linear;
};

// Probe/coupling crossing angle and the derived grating wavevector.
struct BeamGeometry {
  double theta;           // rad
  double wavelength;      // m
  double q;               // rad/m, |k_P - k_C| = 2(2pi/lambda) sin(theta/2)
  double lambda_grating;  // m, 2pi/q
};

struct ThermalEnsemble {
  double temperature;  // K
  double u;            // m/s, most probable speed sqrt(2 kB T/m)
};

// theta in (0, pi), wavelength > 0; q * lambda_grating = 2pi.
BeamGeometry grating_geometry(double theta, double wavelength);

double most_probable_speed(double temperature, const AtomSpecies& species);

ThermalEnsemble thermal_ensemble(double temperature, const AtomSpecies& species);

// Rabi frequency convention of this library: Omega = Gamma sqrt(I/(2 I_sat)).
// Callers that already know Omega pass it straight to
// optical_potential_depth instead of converting an intensity.
double rabi_frequency(double intensity, const AtomSpecies& species);

// |hbar Omega_C Omega_P / (2 Delta)|, the depth of the interference
// potential. Throws std::domain_error at Delta = 0.
double optical_potential_depth(double omega_c, double omega_p,
                               double delta_opt);

// kB T / U; values below 1 mark the bunching regime.
double thermal_vs_potential(double temperature, double depth);

}  // namespace rir
