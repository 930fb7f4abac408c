#pragma once

// SI physical constants (CODATA 2018). All frequencies elsewhere in the
// library are angular (rad/s); interface code converts to/from Hz.
namespace rir::constants {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

inline constexpr double planck = 6.62607015e-34;        // J s
inline constexpr double hbar = 1.054571817e-34;         // J s
inline constexpr double k_boltzmann = 1.380649e-23;     // J/K
inline constexpr double bohr_magneton = 9.2740100783e-24;  // J/T

}  // namespace rir::constants
