#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "rir/physics.hpp"

// Nonlinear least squares for the two lineshape families the toolkit
// produces, plus the width/lifetime -> temperature inversions.
namespace rir {

enum class FitModel { gaussian_derivative, gaussian_decay };

FitModel fit_model_from_string(const std::string& name);
std::string to_string(FitModel model);

// Parameter order:
//   gaussian_derivative: amplitude, center, width, baseline
//                        y = c - A (x - x0) exp(-(x - x0)^2 / w^2)
//   gaussian_decay:      amplitude, center, tau
//                        y = B exp(-((x - t0)/tau)^2)
std::vector<std::string> fit_param_names(FitModel model);

double fit_model_eval(FitModel model, std::span<const double> params, double x);

struct FitResult {
  FitModel model;
  std::vector<std::string> names;
  std::vector<double> params;
  std::vector<double> covariance_diag;  // per-parameter variance estimates
  double residual_norm = 0.0;           // sqrt(sum r^2), data units
  double gradient_norm = 0.0;           // scaled space, at exit
  int iterations = 0;
  bool converged = false;
  std::string status;  // "ok" | "max-iterations" | "singular"
};

// Damped Gauss-Newton with central-difference Jacobians on internally
// nondimensionalized data. Accepted steps never increase the residual.
// Missing initial-guess entries are derived from the data.
FitResult fit_curve(FitModel model, std::span<const double> x,
                    std::span<const double> y,
                    const std::map<std::string, double>& initial_guess = {});

// u = w/q, T = m u^2 / (2 kB); w is the Gaussian width in rad/s.
double temperature_from_width(double width, const BeamGeometry& geometry,
                              const AtomSpecies& species);

// u = sqrt2/(q tau_g), T = m u^2 / (2 kB); exact inverse of the lifetime.
double temperature_from_lifetime(double tau_g, const BeamGeometry& geometry,
                                 const AtomSpecies& species);

}  // namespace rir
