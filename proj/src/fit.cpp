#include "hypconv/fit.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace hypconv {

LineFit fit_loglog_slope(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("fit: xs and ys differ in length");
  if (xs.size() < 3) throw std::invalid_argument("fit: need at least 3 points");
  const auto n = static_cast<double>(xs.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) {
      throw std::invalid_argument("fit: log-log fit needs positive data");
    }
    sx += std::log(xs[i]);
    sy += std::log(ys[i]);
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = std::log(xs[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(ys[i]) - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit: all x values coincide");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

TwoTermFit fit_two_term(std::span<const double> xs, std::span<const double> ys, double gamma) {
  if (xs.size() != ys.size()) throw std::invalid_argument("fit: xs and ys differ in length");
  if (xs.size() < 2) throw std::invalid_argument("fit: need at least 2 points");
  const std::size_t n = xs.size();
  std::vector<double> a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(xs[i] > 0.0)) throw std::invalid_argument("fit: x values must be positive");
    a[i] = std::pow(xs[i], gamma);
    b[i] = a[i] * xs[i];
  }
  // Thin QR of [a b] by modified Gram-Schmidt; the columns are nearly
  // parallel, so normal equations would square an already large condition
  // number.
  const auto dot = [n](const std::vector<double>& u, const auto& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += u[i] * v[i];
    return s;
  };
  const double b_norm = std::sqrt(dot(b, b));
  const double r11 = std::sqrt(dot(a, a));
  for (auto& v : a) v /= r11;
  const double r12 = dot(a, b);
  for (std::size_t i = 0; i < n; ++i) b[i] -= r12 * a[i];
  const double r22 = std::sqrt(dot(b, b));
  if (!(r22 > 1e-12 * b_norm)) {
    throw std::invalid_argument("fit: two-term design matrix is rank deficient");
  }
  for (auto& v : b) v /= r22;
  const double qy1 = dot(a, ys);
  const double qy2 = dot(b, ys);

  TwoTermFit fit;
  fit.gamma = gamma;
  fit.zeta_gamma_plus_1 = qy2 / r22;
  fit.zeta_gamma = (qy1 - r12 * fit.zeta_gamma_plus_1) / r11;
  double res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double c0 = std::pow(xs[i], gamma);
    const double e = ys[i] - (fit.zeta_gamma * c0 + fit.zeta_gamma_plus_1 * c0 * xs[i]);
    res += e * e;
  }
  fit.residual = std::sqrt(res);
  return fit;
}

}  // namespace hypconv
