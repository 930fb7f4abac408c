#include "rir/units.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdlib>
#include <stdexcept>

#include "rir/constants.hpp"

namespace rir {

namespace {

struct Suffix {
  const char* name;
  double factor;
};

// angular entries are in rad/s per unit of the written frequency
constexpr std::array<Suffix, 3> k_time{{{"us", 1e-6}, {"ms", 1e-3}, {"s", 1.0}}};
constexpr std::array<Suffix, 4> k_freq{
    {{"hz", 1.0}, {"khz", 1e3}, {"mhz", 1e6}, {"ghz", 1e9}}};
constexpr std::array<Suffix, 4> k_angular{{{"hz", constants::two_pi},
                                           {"khz", constants::two_pi * 1e3},
                                           {"mhz", constants::two_pi * 1e6},
                                           {"ghz", constants::two_pi * 1e9}}};
constexpr std::array<Suffix, 2> k_intensity{
    {{"mw/cm2", 10.0}, {"w/m2", 1.0}}};
constexpr std::array<Suffix, 3> k_temperature{
    {{"uk", 1e-6}, {"mk", 1e-3}, {"k", 1.0}}};
constexpr std::array<Suffix, 2> k_angle{
    {{"deg", constants::pi / 180.0}, {"rad", 1.0}}};
constexpr std::array<Suffix, 4> k_field{
    {{"mg", 1e-7}, {"ut", 1e-6}, {"g", 1e-4}, {"t", 1.0}}};
constexpr std::array<Suffix, 3> k_length{
    {{"nm", 1e-9}, {"um", 1e-6}, {"m", 1.0}}};
constexpr std::array<Suffix, 1> k_mass{{{"kg", 1.0}}};

std::pair<const Suffix*, std::size_t> table_for(Quantity kind) {
  switch (kind) {
    case Quantity::time_s: return {k_time.data(), k_time.size()};
    case Quantity::frequency_hz: return {k_freq.data(), k_freq.size()};
    case Quantity::angular_rad_s: return {k_angular.data(), k_angular.size()};
    case Quantity::intensity_w_m2:
      return {k_intensity.data(), k_intensity.size()};
    case Quantity::temperature_k:
      return {k_temperature.data(), k_temperature.size()};
    case Quantity::angle_rad: return {k_angle.data(), k_angle.size()};
    case Quantity::magnetic_field_t: return {k_field.data(), k_field.size()};
    case Quantity::length_m: return {k_length.data(), k_length.size()};
    case Quantity::mass_kg: return {k_mass.data(), k_mass.size()};
    case Quantity::dimensionless: return {nullptr, 0};
  }
  return {nullptr, 0};
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace

std::string quantity_name(Quantity kind) {
  switch (kind) {
    case Quantity::dimensionless: return "dimensionless";
    case Quantity::time_s: return "time";
    case Quantity::frequency_hz: return "frequency";
    case Quantity::angular_rad_s: return "frequency";
    case Quantity::intensity_w_m2: return "intensity";
    case Quantity::temperature_k: return "temperature";
    case Quantity::angle_rad: return "angle";
    case Quantity::magnetic_field_t: return "magnetic field";
    case Quantity::length_m: return "length";
    case Quantity::mass_kg: return "mass";
  }
  return "?";
}

double parse_quantity(std::string_view text, Quantity kind) {
  const std::string s = lower(text);
  if (s.empty()) throw std::invalid_argument("empty value");

  const char* begin = s.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (end == begin)
    throw std::invalid_argument("'" + std::string(text) + "' is not a number");
  std::string suffix(end);
  // trim spaces between number and unit
  suffix.erase(0, suffix.find_first_not_of(" \t"));

  if (kind == Quantity::dimensionless) {
    if (!suffix.empty())
      throw std::invalid_argument("'" + std::string(text) +
                                  "': no unit allowed on a dimensionless value");
    return value;
  }

  const auto [table, count] = table_for(kind);
  if (suffix.empty()) {
    if (value == 0.0) return 0.0;  // zero is unit-free
    std::string expected;
    for (std::size_t i = 0; i < count; ++i) {
      if (i) expected += ", ";
      expected += table[i].name;
    }
    throw std::invalid_argument("'" + std::string(text) + "': " +
                                quantity_name(kind) +
                                " needs a unit suffix (" + expected + ")");
  }
  for (std::size_t i = 0; i < count; ++i)
    if (suffix == table[i].name) return value * table[i].factor;
  throw std::invalid_argument("'" + std::string(text) + "': unknown " +
                              quantity_name(kind) + " unit '" + suffix + "'");
}

}  // namespace rir
