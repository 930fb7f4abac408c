#include "rir/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rir/constants.hpp"

namespace rir {

namespace c = constants;

FitModel fit_model_from_string(const std::string& name) {
  if (name == "gaussian-derivative" || name == "gaussian_derivative")
    return FitModel::gaussian_derivative;
  if (name == "gaussian-decay" || name == "gaussian_decay")
    return FitModel::gaussian_decay;
  throw std::invalid_argument("unknown fit model: " + name);
}

std::string to_string(FitModel model) {
  return model == FitModel::gaussian_derivative ? "gaussian-derivative"
                                                : "gaussian-decay";
}

std::vector<std::string> fit_param_names(FitModel model) {
  if (model == FitModel::gaussian_derivative)
    return {"amplitude", "center", "width", "baseline"};
  return {"amplitude", "center", "tau"};
}

double fit_model_eval(FitModel model, std::span<const double> p, double x) {
  if (model == FitModel::gaussian_derivative) {
    const double dx = x - p[1];
    const double w = p[2];
    return p[3] - p[0] * dx * std::exp(-dx * dx / (w * w));
  }
  const double dx = x - p[1];
  const double tau = p[2];
  return p[0] * std::exp(-(dx / tau) * (dx / tau));
}

namespace {

// Solve A x = b (n <= 4) by Gaussian elimination with partial pivoting;
// false when the pivot underflows the scale of A.
bool solve_dense(int n, double a[4][4], const double b[4], double x[4]) {
  double m[4][5];
  double scale = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      m[i][j] = a[i][j];
      scale = std::max(scale, std::abs(a[i][j]));
    }
    m[i][n] = b[i];
  }
  if (scale == 0.0) return false;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    if (std::abs(m[piv][col]) < 1e-14 * scale) return false;
    if (piv != col)
      for (int j = col; j <= n; ++j) std::swap(m[piv][j], m[col][j]);
    for (int r = col + 1; r < n; ++r) {
      const double f = m[r][col] / m[col][col];
      for (int j = col; j <= n; ++j) m[r][j] -= f * m[col][j];
    }
  }
  for (int i = n - 1; i >= 0; --i) {
    double acc = m[i][n];
    for (int j = i + 1; j < n; ++j) acc -= m[i][j] * x[j];
    x[i] = acc / m[i][i];
  }
  return true;
}

struct ScaledData {
  std::vector<double> x, y;
  double x_mid, x_rad, y_scale;
};

ScaledData nondimensionalize(std::span<const double> x,
                             std::span<const double> y) {
  ScaledData d;
  const auto [xlo, xhi] = std::minmax_element(x.begin(), x.end());
  d.x_mid = 0.5 * (*xlo + *xhi);
  d.x_rad = 0.5 * (*xhi - *xlo);
  if (!(d.x_rad > 0.0))
    throw std::invalid_argument("fit_curve: degenerate x range");
  d.y_scale = 0.0;
  for (double v : y) d.y_scale = std::max(d.y_scale, std::abs(v));
  if (d.y_scale == 0.0) d.y_scale = 1.0;
  d.x.reserve(x.size());
  d.y.reserve(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    d.x.push_back((x[i] - d.x_mid) / d.x_rad);
    d.y.push_back(y[i] / d.y_scale);
  }
  return d;
}

// Data-derived starting point, in original units.
std::vector<double> default_guess(FitModel model, std::span<const double> x,
                                  std::span<const double> y) {
  const auto [ylo, yhi] = std::minmax_element(y.begin(), y.end());
  const auto i_min = static_cast<std::size_t>(ylo - y.begin());
  const auto i_max = static_cast<std::size_t>(yhi - y.begin());
  if (model == FitModel::gaussian_derivative) {
    // w from the extremum splitting, A from the extremum height
    double w = std::abs(x[i_min] - x[i_max]) / std::sqrt(2.0);
    if (w == 0.0) w = 0.25 * std::abs(x.back() - x.front());
    const double x0 = 0.5 * (x[i_min] + x[i_max]);
    const double h = 0.5 * (*yhi - *ylo);
    const double amp = h * std::sqrt(2.0 * std::exp(1.0)) / w;
    double base = 0.0;
    for (double v : y) base += v;
    base /= static_cast<double>(y.size());
    return {amp, x0, w, base};
  }
  const double b = *yhi;
  const double t0 = x[i_max];
  double tau = 0.0;
  for (std::size_t i = i_max; i < y.size(); ++i) {
    if (y[i] < b / std::exp(1.0)) {
      tau = x[i] - t0;
      break;
    }
  }
  if (tau <= 0.0) tau = 0.5 * std::abs(x.back() - t0);
  if (tau <= 0.0) tau = 0.5 * std::abs(x.back() - x.front());
  return {b, t0, tau};
}

}  // namespace

FitResult fit_curve(FitModel model, std::span<const double> x,
                    std::span<const double> y,
                    const std::map<std::string, double>& initial_guess) {
  const auto names = fit_param_names(model);
  const int np = static_cast<int>(names.size());
  if (x.size() != y.size())
    throw std::invalid_argument("fit_curve: x/y size mismatch");
  if (x.size() < 2 * names.size())
    throw std::invalid_argument(
        "fit_curve: need at least 2x more points than parameters");
  for (const auto& [key, value] : initial_guess)
    if (std::find(names.begin(), names.end(), key) == names.end())
      throw std::invalid_argument("fit_curve: unknown parameter '" + key + "'");

  std::vector<double> p0 = default_guess(model, x, y);
  for (int j = 0; j < np; ++j)
    if (auto it = initial_guess.find(names[j]); it != initial_guess.end())
      p0[static_cast<std::size_t>(j)] = it->second;

  const ScaledData d = nondimensionalize(x, y);

  // parameter map original <-> scaled (multiplicative, plus shift on centers)
  std::vector<double> mul(static_cast<std::size_t>(np));
  std::vector<double> shift(static_cast<std::size_t>(np), 0.0);
  if (model == FitModel::gaussian_derivative) {
    mul = {d.y_scale / d.x_rad, d.x_rad, d.x_rad, d.y_scale};
    shift[1] = d.x_mid;
  } else {
    mul = {d.y_scale, d.x_rad, d.x_rad};
    shift[1] = d.x_mid;
  }
  std::vector<double> p(static_cast<std::size_t>(np));
  for (int j = 0; j < np; ++j)
    p[static_cast<std::size_t>(j)] =
        (p0[static_cast<std::size_t>(j)] - shift[static_cast<std::size_t>(j)]) /
        mul[static_cast<std::size_t>(j)];

  const std::size_t n = d.x.size();
  const auto residuals = [&](const std::vector<double>& par,
                             std::vector<double>& r) {
    for (std::size_t i = 0; i < n; ++i)
      r[i] = fit_model_eval(model, par, d.x[i]) - d.y[i];
  };
  const auto sum_sq = [](const std::vector<double>& r) {
    double acc = 0.0;
    for (double v : r) acc += v * v;
    return acc;
  };

  std::vector<double> r(n), r_try(n);
  residuals(p, r);
  double f = sum_sq(r);

  std::vector<std::vector<double>> jac(
      static_cast<std::size_t>(np), std::vector<double>(n));
  double lambda = 1e-3;
  bool converged = false;
  std::string status = "max-iterations";
  double grad_norm = std::numeric_limits<double>::quiet_NaN();
  int iter = 0;
  double jtj_save[4][4] = {};

  for (iter = 1; iter <= 200; ++iter) {
    // central-difference Jacobian, step 1e-6 x parameter scale
    std::vector<double> pw = p;
    for (int j = 0; j < np; ++j) {
      const auto js = static_cast<std::size_t>(j);
      const double h = 1e-6 * std::max(std::abs(p[js]), 1.0);
      pw[js] = p[js] + h;
      residuals(pw, r_try);
      jac[js] = r_try;
      pw[js] = p[js] - h;
      residuals(pw, r_try);
      for (std::size_t i = 0; i < n; ++i)
        jac[js][i] = (jac[js][i] - r_try[i]) / (2.0 * h);
      pw[js] = p[js];
    }

    double jtj[4][4] = {};
    double jtr[4] = {};
    for (int a = 0; a < np; ++a) {
      const auto as = static_cast<std::size_t>(a);
      for (int b = a; b < np; ++b) {
        const auto bs = static_cast<std::size_t>(b);
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) acc += jac[as][i] * jac[bs][i];
        jtj[a][b] = jtj[b][a] = acc;
      }
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) acc += jac[as][i] * r[i];
      jtr[a] = acc;
    }
    for (int a = 0; a < np; ++a)
      for (int b = 0; b < np; ++b) jtj_save[a][b] = jtj[a][b];

    grad_norm = 0.0;
    for (int a = 0; a < np; ++a) grad_norm += jtr[a] * jtr[a];
    grad_norm = std::sqrt(grad_norm);
    if (grad_norm < 1e-10) {
      converged = true;
      status = "ok";
      break;
    }

    // damped normal equations; raise lambda until a step is accepted
    bool accepted = false;
    while (lambda < 1e12) {
      double a_damped[4][4];
      for (int aa = 0; aa < np; ++aa)
        for (int bb = 0; bb < np; ++bb)
          a_damped[aa][bb] =
              jtj[aa][bb] + (aa == bb ? lambda * jtj[aa][aa] : 0.0);
      double neg_jtr[4], step[4];
      for (int aa = 0; aa < np; ++aa) neg_jtr[aa] = -jtr[aa];
      if (!solve_dense(np, a_damped, neg_jtr, step)) {
        lambda *= 10.0;
        continue;
      }
      std::vector<double> p_try = p;
      for (int j = 0; j < np; ++j)
        p_try[static_cast<std::size_t>(j)] += step[j];
      residuals(p_try, r_try);
      const double f_try = sum_sq(r_try);
      if (f_try < f) {
        double rel_step = 0.0;
        for (int j = 0; j < np; ++j)
          rel_step = std::max(
              rel_step, std::abs(step[j]) /
                            std::max(std::abs(p[static_cast<std::size_t>(j)]),
                                     1.0));
        p = p_try;
        r.swap(r_try);
        f = f_try;
        lambda = std::max(lambda / 10.0, 1e-12);
        accepted = true;
        if (rel_step < 1e-8) {
          converged = true;
          status = "ok";
        }
        break;
      }
      lambda *= 10.0;
    }
    if (!accepted) {
      status = "singular";
      break;
    }
    if (converged) break;
  }

  FitResult result;
  result.model = model;
  result.names = names;
  result.params.resize(static_cast<std::size_t>(np));
  for (int j = 0; j < np; ++j) {
    const auto js = static_cast<std::size_t>(j);
    result.params[js] = p[js] * mul[js] + shift[js];
  }
  // widths enter the models squared; report them positive
  result.params[2] = std::abs(result.params[2]);
  result.residual_norm = d.y_scale * std::sqrt(f);
  result.gradient_norm = grad_norm;
  result.iterations = iter;
  result.converged = converged;
  result.status = status;

  // covariance from the undamped normal equations at the solution
  result.covariance_diag.assign(static_cast<std::size_t>(np),
                                std::numeric_limits<double>::quiet_NaN());
  if (n > static_cast<std::size_t>(np)) {
    const double variance =
        f / static_cast<double>(n - static_cast<std::size_t>(np));
    for (int j = 0; j < np; ++j) {
      double e[4] = {}, col[4];
      e[j] = 1.0;
      double a_copy[4][4];
      for (int aa = 0; aa < np; ++aa)
        for (int bb = 0; bb < np; ++bb) a_copy[aa][bb] = jtj_save[aa][bb];
      if (solve_dense(np, a_copy, e, col) && col[j] > 0.0) {
        const auto js = static_cast<std::size_t>(j);
        result.covariance_diag[js] = variance * col[j] * mul[js] * mul[js];
      }
    }
  }
  return result;
}

double temperature_from_width(double width, const BeamGeometry& geometry,
                              const AtomSpecies& species) {
  if (!(width > 0.0))
    throw std::domain_error("temperature_from_width: width must be > 0");
  const double u = width / geometry.q;
  return species.mass * u * u / (2.0 * c::k_boltzmann);
}

double temperature_from_lifetime(double tau_g, const BeamGeometry& geometry,
                                 const AtomSpecies& species) {
  if (!(tau_g > 0.0))
    throw std::domain_error("temperature_from_lifetime: tau_g must be > 0");
  const double u = std::sqrt(2.0) / (geometry.q * tau_g);
  return species.mass * u * u / (2.0 * c::k_boltzmann);
}

}  // namespace rir
