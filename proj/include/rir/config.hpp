#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "rir/physics.hpp"
#include "rir/spectrum.hpp"

// Flat `key = value` scenario configuration with bracketed sections.
// Defaults are the cesium working point; every value carries an explicit
// unit suffix. Example:
//
//   [geometry]
//   theta = 2deg
//   [ensemble]
//   temperature = 320uk
//   [coupling]
//   intensity = 120mw/cm2
//   detuning = -30mhz
//   polarization = sigma+
//   [run]
//   seed = 1
//   outdir = out
namespace rir {

struct ScenarioConfig {
  AtomSpecies species = AtomSpecies::cesium_d2();
  double theta;             // rad
  double temperature;       // K
  Beam coupling;
  Beam probe;
  Beam read;
  double delta_min, delta_max;  // rad/s, spectrum grids
  int n_delta;
  double t_max;             // s, time grids
  int n_time;
  std::uint64_t seed;
  std::string outdir;

  ScenarioConfig();

  BeamGeometry geometry() const;
  ThermalEnsemble ensemble() const;
  RirParams rir_params() const;

  void validate() const;  // throws std::invalid_argument / std::domain_error
};

ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::string& path);

}  // namespace rir
