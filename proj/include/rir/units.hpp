#pragma once

#include <string>
#include <string_view>

// Quantity parsing for config and sequence files. Dimensioned values must
// carry an explicit unit suffix (`100us`, `-30mhz`, `120mw/cm2`); bare
// numbers are accepted only for dimensionless quantities and for exact
// zeros. Detunings and other angular rates take ordinary-frequency
// suffixes and are converted to rad/s on the way in.
namespace rir {

enum class Quantity {
  dimensionless,
  time_s,
  frequency_hz,
  angular_rad_s,
  intensity_w_m2,
  temperature_k,
  angle_rad,
  magnetic_field_t,
  length_m,
  mass_kg,
};

// Throws std::invalid_argument with a self-contained message.
double parse_quantity(std::string_view text, Quantity kind);

std::string quantity_name(Quantity kind);

}  // namespace rir
