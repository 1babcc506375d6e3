#pragma once

#include <span>

namespace hypconv {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;  // natural log
};

/// Ordinary least squares on (ln x, ln y). Needs >= 3 points, all positive.
LineFit fit_loglog_slope(std::span<const double> xs, std::span<const double> ys);

struct TwoTermFit {
  double zeta_gamma = 0.0;
  double zeta_gamma_plus_1 = 0.0;
  double gamma = 0.0;
  /// Euclidean norm of y - (zeta_g x^g + zeta_g1 x^(g+1)).
  double residual = 0.0;
};

/// Least squares in the monomials x^gamma, x^(gamma+1). Needs >= 2 points
/// with distinct x.
TwoTermFit fit_two_term(std::span<const double> xs, std::span<const double> ys, double gamma);

}  // namespace hypconv
