#include "rir/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "rir/constants.hpp"
#include "rir/units.hpp"

namespace rir {

namespace c = constants;

ScenarioConfig::ScenarioConfig()
    : theta(2.0 * c::pi / 180.0),
      temperature(320e-6),
      coupling{1200.0, -c::two_pi * 30e6, Polarization::sigma_plus},
      probe{2.0, -c::two_pi * 30e6, Polarization::sigma_plus},
      read{1400.0, -c::two_pi * 30e6, Polarization::sigma_plus},
      delta_min(-c::two_pi * 40e3),
      delta_max(c::two_pi * 40e3),
      n_delta(801),
      t_max(150e-6),
      n_time(512),
      seed(1),
      outdir(".") {}

BeamGeometry ScenarioConfig::geometry() const {
  return grating_geometry(theta, species.wavelength);
}

ThermalEnsemble ScenarioConfig::ensemble() const {
  return thermal_ensemble(temperature, species);
}

RirParams ScenarioConfig::rir_params() const {
  return RirParams{species, geometry(), ensemble(), coupling, probe};
}

void ScenarioConfig::validate() const {
  species.validate();
  if (!(theta > 0.0) || !(theta < c::pi))
    throw std::domain_error("config: theta must lie in (0deg, 180deg)");
  if (!(temperature > 0.0))
    throw std::domain_error("config: temperature must be > 0");
  for (const Beam* b : {&coupling, &probe, &read})
    if (b->intensity < 0.0)
      throw std::domain_error("config: beam intensity must be >= 0");
  if (!(delta_min < delta_max))
    throw std::domain_error("config: delta_min must be below delta_max");
  if (n_delta < 32) throw std::domain_error("config: n_delta must be >= 32");
  if (!(t_max > 0.0)) throw std::domain_error("config: t_max must be > 0");
  if (n_time < 16) throw std::domain_error("config: n_time must be >= 16");
}

namespace {

Polarization parse_polarization(const std::string& v, int line_no) {
  if (v == "sigma+") return Polarization::sigma_plus;
  if (v == "sigma-") return Polarization::sigma_minus;
  if (v == "linear") return Polarization::linear;
  throw std::invalid_argument("config line " + std::to_string(line_no) +
                              ": polarization must be sigma+, sigma- or linear");
}

[[noreturn]] void fail(int line_no, const std::string& message) {
  throw std::invalid_argument("config line " + std::to_string(line_no) + ": " +
                              message);
}

}  // namespace

ScenarioConfig parse_config(std::string_view text) {
  ScenarioConfig cfg;
  std::istringstream in{std::string(text)};
  std::string line, section;
  int line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);

    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, "unterminated section header");
      section = line.substr(1, line.size() - 2);
      const bool known = section == "species" || section == "geometry" ||
                         section == "ensemble" || section == "coupling" ||
                         section == "probe" || section == "read" ||
                         section == "grids" || section == "run";
      if (!known) fail(line_no, "unknown section [" + section + "]");
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(line_no, "expected key = value");
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    const auto kl = key.find_last_not_of(" \t");
    key = key.substr(0, kl == std::string::npos ? 0 : kl + 1);
    const auto vf = value.find_first_not_of(" \t");
    value = vf == std::string::npos ? "" : value.substr(vf);
    if (key.empty()) fail(line_no, "empty key");
    if (value.empty()) fail(line_no, "empty value for '" + key + "'");
    if (section.empty()) fail(line_no, "key '" + key + "' outside a section");

    const auto quantity = [&](Quantity q) {
      try {
        return parse_quantity(value, q);
      } catch (const std::invalid_argument& e) {
        fail(line_no, key + ": " + e.what());
      }
    };

    if (section == "species") {
      if (key == "name") {
        if (value != "cesium") fail(line_no, "unknown species '" + value + "'");
        cfg.species = AtomSpecies::cesium_d2();
      } else if (key == "mass") {
        cfg.species.mass = quantity(Quantity::mass_kg);
      } else if (key == "wavelength") {
        cfg.species.wavelength = quantity(Quantity::length_m);
      } else if (key == "gamma") {
        // written as the ordinary linewidth Gamma/2pi
        cfg.species.gamma = quantity(Quantity::angular_rad_s);
      } else if (key == "i_sat") {
        cfg.species.i_sat = quantity(Quantity::intensity_w_m2);
      } else if (key == "g_f_upper") {
        cfg.species.g_f_upper = quantity(Quantity::dimensionless);
      } else if (key == "g_f_lower") {
        cfg.species.g_f_lower = quantity(Quantity::dimensionless);
      } else if (key == "hyperfine") {
        cfg.species.hyperfine_splitting = quantity(Quantity::frequency_hz);
      } else {
        fail(line_no, "unknown key '" + key + "' in [species]");
      }
    } else if (section == "geometry") {
      if (key == "theta") {
        cfg.theta = quantity(Quantity::angle_rad);
      } else {
        fail(line_no, "unknown key '" + key + "' in [geometry]");
      }
    } else if (section == "ensemble") {
      if (key == "temperature") {
        cfg.temperature = quantity(Quantity::temperature_k);
      } else {
        fail(line_no, "unknown key '" + key + "' in [ensemble]");
      }
    } else if (section == "coupling" || section == "probe" ||
               section == "read") {
      Beam& beam = section == "coupling" ? cfg.coupling
                   : section == "probe"  ? cfg.probe
                                         : cfg.read;
      if (key == "intensity") {
        beam.intensity = quantity(Quantity::intensity_w_m2);
      } else if (key == "detuning") {
        beam.detuning = quantity(Quantity::angular_rad_s);
      } else if (key == "polarization") {
        beam.polarization = parse_polarization(value, line_no);
      } else {
        fail(line_no, "unknown key '" + key + "' in [" + section + "]");
      }
    } else if (section == "grids") {
      if (key == "delta_min") {
        cfg.delta_min = quantity(Quantity::angular_rad_s);
      } else if (key == "delta_max") {
        cfg.delta_max = quantity(Quantity::angular_rad_s);
      } else if (key == "n_delta") {
        cfg.n_delta = static_cast<int>(quantity(Quantity::dimensionless));
      } else if (key == "t_max") {
        cfg.t_max = quantity(Quantity::time_s);
      } else if (key == "n_time") {
        cfg.n_time = static_cast<int>(quantity(Quantity::dimensionless));
      } else {
        fail(line_no, "unknown key '" + key + "' in [grids]");
      }
    } else if (section == "run") {
      if (key == "seed") {
        cfg.seed = static_cast<std::uint64_t>(
            quantity(Quantity::dimensionless));
      } else if (key == "outdir") {
        cfg.outdir = value;
      } else {
        fail(line_no, "unknown key '" + key + "' in [run]");
      }
    }
  }

  cfg.validate();
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_config(buf.str());
}

}  // namespace rir
