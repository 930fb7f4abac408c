#include "rir/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rir {

void SpectrumCurve::validate() const {
  if (delta_grid.size() != values.size())
    throw std::invalid_argument("spectrum: grid/value size mismatch");
  if (delta_grid.size() < 32)
    throw std::invalid_argument("spectrum: need at least 32 grid points");
  for (std::size_t i = 1; i < delta_grid.size(); ++i)
    if (!(delta_grid[i] > delta_grid[i - 1]))
      throw std::invalid_argument("spectrum: grid must be strictly increasing");
  for (double v : values)
    if (!std::isfinite(v))
      throw std::invalid_argument("spectrum: non-finite value");
}

std::vector<double> uniform_grid(double a, double b, int n) {
  if (n < 2) throw std::invalid_argument("uniform_grid: need n >= 2");
  if (!(a < b)) throw std::invalid_argument("uniform_grid: need a < b");
  std::vector<double> g(static_cast<std::size_t>(n));
  // Interpolation form keeps endpoints exact and mirrors sign-symmetric
  // endpoints to bitwise-antisymmetric grid points.
  const double den = static_cast<double>(n - 1);
  for (int i = 0; i < n; ++i)
    g[static_cast<std::size_t>(i)] =
        (static_cast<double>(n - 1 - i) * a + static_cast<double>(i) * b) / den;
  return g;
}

const double RirParams::default_amplitude_scale =
    0.3 * std::sqrt(2.0) * std::exp(0.5);

double rir_lineshape(double delta, const RirParams& params) {
  if (params.amplitude_scale < 0.0)
    throw std::domain_error("rir_lineshape: amplitude_scale must be >= 0");
  const double qu = params.geometry.q * params.ensemble.u;
  const double amp = params.amplitude_scale * params.coupling.intensity /
                     RirParams::coupling_reference_intensity;
  const double x = delta / qu;
  return 1.0 - amp * x * std::exp(-x * x);
}

namespace {

SpectrumCurve sample_spectrum(const RirParams& params, double delta_min,
                              double delta_max, int n, bool parallel) {
  if (n < 32)
    throw std::invalid_argument("transmission_spectrum: need n >= 32");
  if (!(delta_min < delta_max))
    throw std::invalid_argument(
        "transmission_spectrum: need delta_min < delta_max");
  SpectrumCurve curve;
  curve.delta_grid = uniform_grid(delta_min, delta_max, n);
  curve.values.resize(curve.delta_grid.size());
#pragma omp parallel for schedule(static) if (parallel)
  for (int i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    curve.values[k] = rir_lineshape(curve.delta_grid[k], params);
  }
  curve.validate();
  return curve;
}

}  // namespace

SpectrumCurve transmission_spectrum(const RirParams& params, double delta_min,
                                    double delta_max, int n) {
  return sample_spectrum(params, delta_min, delta_max, n, true);
}

SpectrumCurve transmission_spectrum_serial(const RirParams& params,
                                           double delta_min, double delta_max,
                                           int n) {
  return sample_spectrum(params, delta_min, delta_max, n, false);
}

double peak_to_peak_linewidth(const SpectrumCurve& curve) {
  curve.validate();
  const auto [lo, hi] =
      std::minmax_element(curve.values.begin(), curve.values.end());
  const auto i_max = static_cast<std::size_t>(hi - curve.values.begin());
  const auto i_min = static_cast<std::size_t>(lo - curve.values.begin());
  const std::size_t last = curve.values.size() - 1;
  if (i_max == 0 || i_max == last || i_min == 0 || i_min == last)
    throw std::domain_error(
        "peak_to_peak_linewidth: extremum on grid boundary, widen the grid");
  return curve.delta_grid[i_min] - curve.delta_grid[i_max];
}

}  // namespace rir
