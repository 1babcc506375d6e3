#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "hypconv/time_steppers.hpp"

namespace hypconv {

/// Forcing for u' = -lambda u + f(t).
struct Forcing {
  enum class Kind { zero, constant, sine };
  Kind kind = Kind::zero;
  double value = 0.0;  // constant level

  double operator()(double t) const;
  /// d^k f / dt^k, k = 0..3.
  double derivative(int k, double t) const;
};

/// Scalar ODE u' = F(u, t). When `linear` is set the ODE is
/// u' = -lambda u + f(t), which the implicit methods and the closed-form
/// derivative recurrences need.
struct ScalarODE {
  struct Linear {
    double lambda = 1.0;
    Forcing forcing;
  };

  std::function<double(double u, double t)> rhs;
  /// exact(u0, t0, t): the solution through (t0, u0).
  std::function<double(double u0, double t0, double t)> exact;
  std::optional<Linear> linear;

  static ScalarODE linear_ode(double lambda, Forcing forcing);
};

/// Presets: "decay" (u' = -u), "forced" (u' = -u + sin t), "constant" (u' = 1).
ScalarODE ode_by_name(std::string_view name);

/// u_exact(t0 + dt) minus one step of `spec` started from u0 = u_exact(t0).
/// AB methods get exact history. Without an exact solution the reference is
/// RK4 with step dt/100.
double one_step_error(const ScalarODE& ode, const StepperSpec& spec, double u0, double t0,
                      double dt);

/// Least-squares slope of log|error| against log dt. Points with
/// |error| < 1e-14 are dropped; fewer than 3 usable points throws.
double estimate_local_order(const ScalarODE& ode, const StepperSpec& spec, double u0, double t0,
                            std::span<const double> dt_seq);

/// Limit of error / dt^(order+1) as dt -> 0, i.e. c_{order+1} / (order+1)!,
/// from two-point Richardson elimination on the two smallest steps.
double estimate_lte_coefficient(const ScalarODE& ode, const StepperSpec& spec, double u0,
                                double t0, std::span<const double> dt_seq);

/// k-th time derivative of the solution of u' = -lambda u + f(t) at (u, t),
/// expressed through the right-hand side F = -lambda u + f:
///   F1 = F
///   F2 = f' - lambda F
///   F3 = f'' - lambda f' + lambda^2 F
///   F4 = f''' - lambda f'' + lambda^2 f' - lambda^3 F
double analytic_Fk_linear(double lambda, const Forcing& f, double u, double t, int k);

/// Geometric sequence of `count` steps from `largest` to `smallest`.
std::vector<double> geometric_steps(double largest, double smallest, int count);

struct OdeVerifyReport {
  StepperSpec spec;
  double slope = 0.0;
  double expected_slope = 0.0;
  double coefficient = 0.0;
  /// Closed-form c/(order+1)! where one is known for the preset and method.
  std::optional<double> expected_coefficient;
  bool pass = false;
};

/// Slope within 0.1 of order+1 and, where a closed form exists, coefficient
/// within 5%.
OdeVerifyReport verify_ode_method(std::string_view ode_name, const StepperSpec& spec);

}  // namespace hypconv
