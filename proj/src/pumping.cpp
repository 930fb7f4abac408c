#include "rir/pumping.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "rir/constants.hpp"

namespace rir {

namespace c = constants;

double ZeemanPopulations::total() const {
  return std::accumulate(p4.begin(), p4.end(), 0.0) +
         std::accumulate(p3.begin(), p3.end(), 0.0);
}

void ZeemanPopulations::validate() const {
  for (double p : p4)
    if (p < 0.0) throw std::domain_error("populations: negative entry");
  for (double p : p3)
    if (p < 0.0) throw std::domain_error("populations: negative entry");
  if (std::abs(total() - 1.0) > 1e-12)
    throw std::domain_error("populations: total must be 1");
}

ZeemanPopulations ZeemanPopulations::uniform_f4() {
  ZeemanPopulations z;
  z.p4.fill(1.0 / 9.0);
  return z;
}

ZeemanPopulations ZeemanPopulations::stretched(int sign) {
  ZeemanPopulations z;
  z.p4[sign >= 0 ? 8 : 0] = 1.0;
  return z;
}

namespace {

bool is_multiple_of_half(double x) {
  return std::abs(2.0 * x - std::round(2.0 * x)) < 1e-9;
}

double factorial(int n) {
  static const auto table = [] {
    std::array<double, 40> t{};
    t[0] = 1.0;
    for (std::size_t i = 1; i < t.size(); ++i)
      t[i] = t[i - 1] * static_cast<double>(i);
    return t;
  }();
  return table.at(static_cast<std::size_t>(n));
}

}  // namespace

double clebsch_gordan(double j1, double m1, double j2, double m2, double J,
                      double M) {
  for (double x : {j1, m1, j2, m2, J, M})
    if (!is_multiple_of_half(x))
      throw std::invalid_argument("clebsch_gordan: arguments must be multiples of 1/2");
  if (std::abs(m1 + m2 - M) > 1e-9) return 0.0;
  if (J < std::abs(j1 - j2) - 1e-9 || J > j1 + j2 + 1e-9) return 0.0;
  if (std::abs(m1) > j1 + 1e-9 || std::abs(m2) > j2 + 1e-9 ||
      std::abs(M) > J + 1e-9)
    return 0.0;

  const auto I = [](double x) { return static_cast<int>(std::lround(x)); };

  // Racah's closed form.
  const double pref =
      (2.0 * J + 1.0) * factorial(I(j1 + j2 - J)) * factorial(I(j1 - j2 + J)) *
      factorial(I(-j1 + j2 + J)) / factorial(I(j1 + j2 + J + 1.0));
  const double fac =
      factorial(I(J + M)) * factorial(I(J - M)) * factorial(I(j1 - m1)) *
      factorial(I(j1 + m1)) * factorial(I(j2 - m2)) * factorial(I(j2 + m2));

  const int k_min = std::max({0, I(j2 - J - m1), I(j1 + m2 - J)});
  const int k_max = std::min({I(j1 + j2 - J), I(j1 - m1), I(j2 + m2)});
  double sum = 0.0;
  for (int k = k_min; k <= k_max; ++k) {
    const double den = factorial(k) * factorial(I(j1 + j2 - J) - k) *
                       factorial(I(j1 - m1) - k) * factorial(I(j2 + m2) - k) *
                       factorial(I(J - j2 + m1) + k) *
                       factorial(I(J - j1 - m2) + k);
    sum += ((k % 2 == 0) ? 1.0 : -1.0) / den;
  }
  return std::sqrt(pref * fac) * sum;
}

namespace {

// <4 m; 1 q | 5 m+q>^2: relative absorption strength, 1 on the stretched
// transition.
double absorption_weight(int m, int q) {
  const double cg = clebsch_gordan(4, m, 1, q, 5, m + q);
  return cg * cg;
}

// Branching of |F'=5, mp> into |F=4, mf>; sums to 1 over mf.
double branching(int mp, int mf) {
  if (std::abs(mf) > 4 || std::abs(mp - mf) > 1) return 0.0;
  const double cg = clebsch_gordan(4, mf, 1, mp - mf, 5, mp);
  return cg * cg;
}

}  // namespace

ZeemanPopulations pump_evolution(const ZeemanPopulations& initial,
                                 const Beam& light, double duration,
                                 const AtomSpecies& species, int n_steps) {
  if (duration < 0.0)
    throw std::domain_error("pump_evolution: duration must be >= 0");
  if (light.polarization == Polarization::linear)
    throw std::invalid_argument(
        "pump_evolution: circular polarization required");
  initial.validate();
  if (duration == 0.0) return initial;

  const int dir = light.polarization == Polarization::sigma_plus ? +1 : -1;
  const double two_delta = 2.0 * light.detuning / species.gamma;
  const double s =
      (light.intensity / species.i_sat) / (1.0 + two_delta * two_delta);
  const double rate = 0.5 * species.gamma * s / (1.0 + s);
  if (rate == 0.0) return initial;

  // dp/dt = M p on the 9-dim F=4 manifold; columns of M sum to zero.
  double m_rate[9][9] = {};
  for (int m = -4; m <= 4; ++m) {
    const double out = rate * absorption_weight(m, dir);
    if (out == 0.0) continue;
    m_rate[m + 4][m + 4] -= out;
    const int mp = m + dir;
    for (int mf = std::max(-4, mp - 1); mf <= std::min(4, mp + 1); ++mf)
      m_rate[mf + 4][m + 4] += out * branching(mp, mf);
  }

  int steps = n_steps;
  if (steps <= 0)
    steps = std::clamp(static_cast<int>(std::ceil(duration * rate / 0.05)),
                       64, 4'000'000);
  const double dt = duration / steps;

  std::array<double, 9> p = initial.p4;
  const auto deriv = [&](const std::array<double, 9>& y,
                         std::array<double, 9>& dy) {
    for (int i = 0; i < 9; ++i) {
      double acc = 0.0;
      for (int j = 0; j < 9; ++j) acc += m_rate[i][j] * y[j];
      dy[i] = acc;
    }
  };

  std::array<double, 9> k1, k2, k3, k4, tmp;
  for (int step = 0; step < steps; ++step) {
    deriv(p, k1);
    for (int i = 0; i < 9; ++i) tmp[i] = p[i] + 0.5 * dt * k1[i];
    deriv(tmp, k2);
    for (int i = 0; i < 9; ++i) tmp[i] = p[i] + 0.5 * dt * k2[i];
    deriv(tmp, k3);
    for (int i = 0; i < 9; ++i) tmp[i] = p[i] + dt * k3[i];
    deriv(tmp, k4);
    for (int i = 0; i < 9; ++i)
      p[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }

  ZeemanPopulations out = initial;
  out.p4 = p;
  // clip RK4 round-off below zero
  for (double& v : out.p4) v = std::max(v, 0.0);
  return out;
}

MicrowaveSpectrum microwave_spectrum(const ZeemanPopulations& pops,
                                     double b_field,
                                     const AtomSpecies& species,
                                     double linewidth) {
  if (b_field < 0.0)
    throw std::domain_error("microwave_spectrum: B must be >= 0");
  if (!(linewidth > 0.0))
    throw std::domain_error("microwave_spectrum: linewidth must be > 0");
  pops.validate();

  // squared Delta m = +-1 dipole weights <3 m3; 1 q | 4 m4>^2
  struct Line {
    double offset;
    double amp;
  };
  std::vector<Line> lines;
  double w_max = 0.0;
  for (int m4 = -4; m4 <= 4; ++m4) {
    for (int dm : {-1, +1}) {
      const int m3 = m4 + dm;
      if (std::abs(m3) > 3) continue;
      const double cg = clebsch_gordan(3, m3, 1, m4 - m3, 4, m4);
      const double w = cg * cg;
      w_max = std::max(w_max, w);
      const double offset = (species.g_f_upper * m4 - species.g_f_lower * m3) *
                            c::bohr_magneton * b_field / c::planck;
      lines.push_back({offset, pops.p4[static_cast<std::size_t>(m4 + 4)] * w});
    }
  }
  for (Line& l : lines) l.amp /= w_max;

  std::sort(lines.begin(), lines.end(),
            [](const Line& a, const Line& b) { return a.offset < b.offset; });

  double span = 0.0;
  for (const Line& l : lines) span = std::max(span, std::abs(l.offset));
  const double merge_tol = span > 0.0 ? 1e-9 * span : 0.0;

  MicrowaveSpectrum spec;
  spec.linewidth = linewidth;
  for (const Line& l : lines) {
    if (!spec.frequencies.empty() &&
        l.offset - spec.frequencies.back() <= merge_tol) {
      spec.amplitudes.back() += l.amp;
    } else {
      spec.frequencies.push_back(l.offset);
      spec.amplitudes.push_back(l.amp);
    }
  }
  return spec;
}

SpectrumCurve render_microwave_scan(const MicrowaveSpectrum& spectrum,
                                    std::span<const double> grid) {
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw std::invalid_argument("render_microwave_scan: grid must increase");
  SpectrumCurve curve;
  curve.delta_grid.assign(grid.begin(), grid.end());
  curve.values.assign(grid.size(), 0.0);
  const double hwhm = spectrum.linewidth / 2.0;
  for (std::size_t j = 0; j < spectrum.frequencies.size(); ++j) {
    const double f0 = spectrum.frequencies[j];
    const double a = spectrum.amplitudes[j];
    for (std::size_t i = 0; i < curve.delta_grid.size(); ++i) {
      const double d = curve.delta_grid[i] - f0;
      curve.values[i] += a * hwhm * hwhm / (d * d + hwhm * hwhm);
    }
  }
  return curve;
}

}  // namespace rir
