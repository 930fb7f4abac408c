#pragma once

#include <array>
#include <span>
#include <vector>

#include "rir/physics.hpp"
#include "rir/spectrum.hpp"

// Zeeman-manifold optical pumping on the F=4 -> F'=5 transition and the
// microwave population readout across the ground hyperfine splitting.
namespace rir {

// Probability vector over the ground Zeeman sublevels.
// p4[m+4] holds m_F = m in F=4; p3[m+3] holds m_F = m in F=3.
struct ZeemanPopulations {
  std::array<double, 9> p4{};
  std::array<double, 7> p3{};

  double total() const;
  void validate() const;  // entries >= 0, total = 1 +- 1e-12

  static ZeemanPopulations uniform_f4();
  static ZeemanPopulations stretched(int sign = +1);  // all in m_F = +-4
};

// Delta m = +-1 hyperfine resonances: offsets from the hyperfine
// splitting in Hz, degenerate lines merged.
struct MicrowaveSpectrum {
  std::vector<double> frequencies;  // Hz, strictly increasing
  std::vector<double> amplitudes;   // >= 0, max normalized weights x populations
  double linewidth = 0.0;           // Hz FWHM used when rendering
};

// Clebsch-Gordan coefficient <j1 m1; j2 m2 | J M> (Racah formula,
// integer or half-integer arguments).
double clebsch_gordan(double j1, double m1, double j2, double m2, double J,
                      double M);

// Rate-equation pumping with the excited state adiabatically eliminated:
// excitation m -> m' = m +- 1 at R * C_abs(m), spontaneous return with
// squared Clebsch-Gordan branching; R = (Gamma/2) s/(1+s),
// s = (I/I_sat)/(1 + (2 Delta/Gamma)^2). Circular polarization only.
// n_steps = 0 picks the step count from the scattering rate.
ZeemanPopulations pump_evolution(const ZeemanPopulations& initial,
                                 const Beam& light, double duration,
                                 const AtomSpecies& species, int n_steps = 0);

// Resonance offset of (F=4, m4) <-> (F=3, m3): (g4 m4 - g3 m3) muB B / h.
// Amplitude: p4[m4] times the squared Delta m = +-1 dipole weight,
// normalized so the largest weight is 1. Lines closer than 1e-9 of the
// largest offset are merged by summing amplitudes.
MicrowaveSpectrum microwave_spectrum(const ZeemanPopulations& pops,
                                     double b_field, const AtomSpecies& species,
                                     double linewidth);

// Sum of Lorentzians (peak value = line amplitude) on the given Hz grid.
SpectrumCurve render_microwave_scan(const MicrowaveSpectrum& spectrum,
                                    std::span<const double> grid);

}  // namespace rir
