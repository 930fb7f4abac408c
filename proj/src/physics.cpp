#include "rir/physics.hpp"

#include <cmath>
#include <stdexcept>

#include "rir/constants.hpp"

namespace rir {

namespace c = constants;

double AtomSpecies::doppler_temperature() const {
  return c::hbar * gamma / (2.0 * c::k_boltzmann);
}

void AtomSpecies::validate() const {
  if (!(mass > 0.0)) throw std::domain_error("species: mass must be > 0");
  if (!(wavelength > 0.0))
    throw std::domain_error("species: wavelength must be > 0");
  if (!(gamma > 0.0)) throw std::domain_error("species: gamma must be > 0");
  if (!(i_sat > 0.0)) throw std::domain_error("species: i_sat must be > 0");
  if (!(g_f_upper > 0.0))
    throw std::domain_error("species: g_f_upper must be > 0");
  if (!(hyperfine_splitting > 0.0))
    throw std::domain_error("species: hyperfine_splitting must be > 0");
}

AtomSpecies AtomSpecies::cesium_d2() {
  // 133Cs D2 line, F=4 -> F'=5 stretched transition.
  return AtomSpecies{
      .mass = 2.20694650e-25,
      .wavelength = 852.347e-9,
      .gamma = c::two_pi * 5.2e6,
      .i_sat = 10.0,  // 1 mW/cm^2
      .g_f_upper = 0.25,
      .g_f_lower = -0.25,
      .hyperfine_splitting = 9.192631770e9,
  };
}

std::string to_string(Polarization p) {
  switch (p) {
    case Polarization::sigma_plus: return "sigma+";
    case Polarization::sigma_minus: return "sigma-";
    case Polarization::linear: return "linear";
  }
  return "?";
}

BeamGeometry grating_geometry(double theta, double wavelength) {
  if (!(theta > 0.0) || !(theta < c::pi))
    throw std::domain_error("grating_geometry: theta must lie in (0, pi)");
  if (!(wavelength > 0.0))
    throw std::domain_error("grating_geometry: wavelength must be > 0");
  const double s = std::sin(theta / 2.0);
  const double q = 2.0 * (c::two_pi / wavelength) * s;
  return BeamGeometry{theta, wavelength, q, c::two_pi / q};
}

double most_probable_speed(double temperature, const AtomSpecies& species) {
  if (!(temperature > 0.0))
    throw std::domain_error("most_probable_speed: temperature must be > 0");
  return std::sqrt(2.0 * c::k_boltzmann * temperature / species.mass);
}

ThermalEnsemble thermal_ensemble(double temperature,
                                 const AtomSpecies& species) {
  return ThermalEnsemble{temperature, most_probable_speed(temperature, species)};
}

double rabi_frequency(double intensity, const AtomSpecies& species) {
  if (intensity < 0.0)
    throw std::domain_error("rabi_frequency: intensity must be >= 0");
  return species.gamma * std::sqrt(intensity / (2.0 * species.i_sat));
}

double optical_potential_depth(double omega_c, double omega_p,
                               double delta_opt) {
  if (delta_opt == 0.0)
    throw std::domain_error("optical_potential_depth: detuning must be nonzero");
  return std::abs(c::hbar * omega_c * omega_p / (2.0 * delta_opt));
}

double thermal_vs_potential(double temperature, double depth) {
  if (!(depth > 0.0))
    throw std::domain_error("thermal_vs_potential: depth must be > 0");
  return c::k_boltzmann * temperature / depth;
}

}  // namespace rir
