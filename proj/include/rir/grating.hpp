#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rir/physics.hpp"

// Density-grating formation and ballistic washout. The analytic decay law
// and the Monte Carlo sampler are independent routes to the same curve;
// tests hold them against each other.
namespace rir {

// First spatial Fourier harmonic of the atomic density at wavevector q.
// b1 is the value at time written_at; ballistic evolution only shrinks it.
struct GratingState {
  double b1;                 // in [0, 1]
  double q;                  // rad/m, > 0
  ThermalEnsemble ensemble;
  double written_at = 0.0;   // s, timeline coordinate

  void validate() const;
};

struct DecayCurve {
  std::vector<double> times;      // s
  std::vector<double> amplitude;  // b1(t)/b1(0)
  std::vector<double> intensity;  // amplitude^2
};

// I1(kappa)/I0(kappa) with kappa = U/(2 kB T); Boltzmann bunching contrast
// in the potential V(z) = (U/2)(1 + cos qz).
double equilibrium_bunching(double depth, double temperature);

// Modified-Bessel ratio I1(x)/I0(x), backward recurrence, 1e-10 relative.
double bessel_i1_over_i0(double x);

// tau_g = Lambda/(sqrt2 pi u) = sqrt2/(q u): 1/e time of grating intensity.
double storage_lifetime(const BeamGeometry& geometry,
                        const ThermalEnsemble& ensemble);

// amplitude(t) = exp(-(q u t)^2/4), intensity = amplitude^2.
DecayCurve analytic_decay(const GratingState& state,
                          std::span<const double> times);

// Phase average |(1/N) sum exp(i q v_k t)| over N Maxwell-Boltzmann
// velocities drawn by the counter-based stream (seed, atom index).
// Summation runs over fixed-size blocks reduced in index order, so the
// result is bitwise independent of the thread count; the serial variant
// is the same kernel with threading off.
DecayCurve monte_carlo_decay(const GratingState& state, int n_atoms,
                             std::uint64_t seed, std::span<const double> times);
DecayCurve monte_carlo_decay_serial(const GratingState& state, int n_atoms,
                                    std::uint64_t seed,
                                    std::span<const double> times);

// Free flight for dt: b1 *= exp(-(q u dt)^2/4). Reading never enters here;
// this is the only channel that changes b1.
GratingState evolve_ballistic(const GratingState& state, double dt);

}  // namespace rir
