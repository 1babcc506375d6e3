#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hypconv {

/// u(x,t) = A sin(kx - wt) + 2A cos(2kx - wt).
///
/// The second mode has twice the amplitude, half the wavelength and the same
/// angular frequency as the first. With `two_modes == false` only the first
/// mode is kept, which is the translated profile A sin(k(x - ct)) used for
/// constant-coefficient advection.
struct ManufacturedSolution {
  double amplitude = 1.0;
  double wavenumber = 0.0;
  double omega = 0.0;
  bool two_modes = true;

  static ManufacturedSolution with_phase_speed(double amplitude, double wavenumber,
                                               double phase_speed, bool two_modes = true) {
    return {amplitude, wavenumber, phase_speed * wavenumber, two_modes};
  }

  double value(double x, double t) const;
  double x_derivative(double x, double t) const;
  double t_derivative(double x, double t) const;
  /// An antiderivative in x; differences give exact cell integrals.
  double antiderivative(double x, double t) const;
};

enum class ProblemId { linear_variable, nonlinear, constant_advection };

enum class Wind { positive, negative };

/// A scalar 1D balance law u_t + F(u,x)_x + R(u,x) = s(x,t).
///
///   linear_variable:    F = q(x) u, q(x) = q0 + q1 x;  R = p0 u
///   nonlinear:          F = mean u + u^2/2;           R = p0 (mean + u)
///   constant_advection: F = a u;                      R = p0 u
///
/// The nonlinear reaction carries the constant p0*mean so that the source
/// built from the exact solution matches the non-decomposed equation.
struct ProblemSpec {
  ProblemId id = ProblemId::linear_variable;
  ManufacturedSolution solution;
  double q0 = 0.0;
  double q1 = 1.0;
  double p0 = 0.0;
  double mean_state = 0.0;
  double advection_speed = 0.0;
  /// False drops the manufactured source (free evolution of the same
  /// operator; the exact solution is then no longer a solution).
  bool forced = true;

  std::string_view name() const;

  double flux(double u, double x) const;
  /// dF/du.
  double flux_speed(double u, double x) const;
  double reaction(double u, double x) const;
  Wind wind() const;
  bool has_source() const;
};

ProblemSpec linear_preset();
ProblemSpec nonlinear_preset();
ProblemSpec constant_advection_preset(double speed = 1.0);
/// u_t + (u^2/2)_x = 0: the nonlinear flux with zero mean, reaction and source.
ProblemSpec inviscid_burgers_preset();

/// Accepts "linear", "nonlinear", "constant-advection". Throws
/// std::invalid_argument otherwise.
ProblemSpec problem_by_name(std::string_view name);

double exact_solution(const ProblemSpec& prob, double x, double t);
/// Mean of the exact solution over [a, b] from the closed-form antiderivative.
double exact_cell_average(const ProblemSpec& prob, double a, double b, double t);
/// The operator applied to the exact solution, from closed-form derivatives.
double source_term(const ProblemSpec& prob, double x, double t);
double flux(const ProblemSpec& prob, double u, double x);
double wave_speed(const ProblemSpec& prob, double u, double x);

/// Evaluates the source on a fixed point set at many times. The spatial
/// phases are tabulated once, so each evaluation costs two trig calls total
/// instead of four per point.
class SourceSampler {
 public:
  SourceSampler(const ProblemSpec& prob, std::span<const double> points);

  std::size_t size() const { return x_.size(); }
  void evaluate(double t, std::span<double> out) const;

 private:
  ProblemSpec prob_;
  std::vector<double> x_;
  std::vector<double> sin1_, cos1_, sin2_, cos2_;
};

/// Five-point Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre5 {
  static constexpr int size = 5;
  static const double nodes[5];
  static const double weights[5];
};

}  // namespace hypconv
