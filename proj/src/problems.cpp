#include "hypconv/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hypconv {

namespace {

struct ModeValues {
  double u, ux, ut;
};

// Both modes from the sines and cosines of their phases.
ModeValues combine(const ManufacturedSolution& s, double sin1, double cos1, double sin2,
                   double cos2) {
  const double a = s.amplitude;
  const double k = s.wavenumber;
  const double w = s.omega;
  ModeValues v{a * sin1, a * k * cos1, -a * w * cos1};
  if (s.two_modes) {
    v.u += 2.0 * a * cos2;
    v.ux -= 4.0 * a * k * sin2;
    v.ut += 2.0 * a * w * sin2;
  }
  return v;
}

ModeValues evaluate_modes(const ManufacturedSolution& s, double x, double t) {
  const double th1 = s.wavenumber * x - s.omega * t;
  const double th2 = 2.0 * s.wavenumber * x - s.omega * t;
  return combine(s, std::sin(th1), std::cos(th1), std::sin(th2), std::cos(th2));
}

double source_from(const ProblemSpec& p, const ModeValues& v, double x) {
  switch (p.id) {
    case ProblemId::linear_variable:
      return v.ut + (p.q1 + p.p0) * v.u + (p.q0 + p.q1 * x) * v.ux;
    case ProblemId::nonlinear:
      return v.ut + (p.mean_state + v.u) * v.ux + p.p0 * (p.mean_state + v.u);
    case ProblemId::constant_advection:
      // u_t + a u_x vanishes identically on the translated profile.
      return p.p0 * v.u;
  }
  return 0.0;
}

}  // namespace

double ManufacturedSolution::value(double x, double t) const {
  return evaluate_modes(*this, x, t).u;
}

double ManufacturedSolution::x_derivative(double x, double t) const {
  return evaluate_modes(*this, x, t).ux;
}

double ManufacturedSolution::t_derivative(double x, double t) const {
  return evaluate_modes(*this, x, t).ut;
}

double ManufacturedSolution::antiderivative(double x, double t) const {
  if (amplitude == 0.0) return 0.0;
  const double k = wavenumber;
  double r = -(amplitude / k) * std::cos(k * x - omega * t);
  if (two_modes) r += (amplitude / k) * std::sin(2.0 * k * x - omega * t);
  return r;
}

std::string_view ProblemSpec::name() const {
  switch (id) {
    case ProblemId::linear_variable: return "linear";
    case ProblemId::nonlinear: return "nonlinear";
    case ProblemId::constant_advection: return "constant-advection";
  }
  return "unknown";
}

double ProblemSpec::flux(double u, double x) const {
  switch (id) {
    case ProblemId::linear_variable: return (q0 + q1 * x) * u;
    case ProblemId::nonlinear: return mean_state * u + 0.5 * u * u;
    case ProblemId::constant_advection: return advection_speed * u;
  }
  return 0.0;
}

double ProblemSpec::flux_speed(double u, double x) const {
  switch (id) {
    case ProblemId::linear_variable: return q0 + q1 * x;
    case ProblemId::nonlinear: return mean_state + u;
    case ProblemId::constant_advection: return advection_speed;
  }
  return 0.0;
}

double ProblemSpec::reaction(double u, double /*x*/) const {
  if (id == ProblemId::nonlinear) return p0 * (mean_state + u);
  return p0 * u;
}

Wind ProblemSpec::wind() const {
  switch (id) {
    case ProblemId::linear_variable:
      return (q0 + 0.5 * q1) >= 0.0 ? Wind::positive : Wind::negative;
    case ProblemId::nonlinear:
      return mean_state >= 0.0 ? Wind::positive : Wind::negative;
    case ProblemId::constant_advection:
      return advection_speed >= 0.0 ? Wind::positive : Wind::negative;
  }
  return Wind::positive;
}

bool ProblemSpec::has_source() const {
  return forced && !(id == ProblemId::constant_advection && p0 == 0.0);
}

ProblemSpec linear_preset() {
  ProblemSpec p;
  p.id = ProblemId::linear_variable;
  p.solution = ManufacturedSolution::with_phase_speed(1.0, 2.0 * std::numbers::pi, 1.0);
  p.q0 = 0.0;
  p.q1 = 1.0;
  p.p0 = 1.0;
  return p;
}

ProblemSpec nonlinear_preset() {
  ProblemSpec p;
  p.id = ProblemId::nonlinear;
  p.solution = ManufacturedSolution::with_phase_speed(0.01, 2.0 * std::numbers::pi, 1.0);
  p.mean_state = 1.0;
  p.p0 = 1.0;
  return p;
}

ProblemSpec constant_advection_preset(double speed) {
  ProblemSpec p;
  p.id = ProblemId::constant_advection;
  p.solution = ManufacturedSolution::with_phase_speed(1.0, 2.0 * std::numbers::pi, speed, false);
  p.advection_speed = speed;
  p.p0 = 0.0;
  return p;
}

ProblemSpec inviscid_burgers_preset() {
  ProblemSpec p = nonlinear_preset();
  p.mean_state = 0.0;
  p.p0 = 0.0;
  p.forced = false;
  return p;
}

ProblemSpec problem_by_name(std::string_view name) {
  if (name == "linear") return linear_preset();
  if (name == "nonlinear") return nonlinear_preset();
  if (name == "constant-advection") return constant_advection_preset();
  throw std::invalid_argument("unknown problem preset '" + std::string(name) + "'");
}

double exact_solution(const ProblemSpec& prob, double x, double t) {
  return prob.solution.value(x, t);
}

double exact_cell_average(const ProblemSpec& prob, double a, double b, double t) {
  if (!(b > a)) throw std::invalid_argument("cell must satisfy a < b");
  const auto& s = prob.solution;
  return (s.antiderivative(b, t) - s.antiderivative(a, t)) / (b - a);
}

double source_term(const ProblemSpec& prob, double x, double t) {
  if (!prob.has_source()) return 0.0;
  return source_from(prob, evaluate_modes(prob.solution, x, t), x);
}

double flux(const ProblemSpec& prob, double u, double x) { return prob.flux(u, x); }

double wave_speed(const ProblemSpec& prob, double u, double x) {
  return prob.flux_speed(u, x);
}

SourceSampler::SourceSampler(const ProblemSpec& prob, std::span<const double> points)
    : prob_(prob), x_(points.begin(), points.end()) {
  const std::size_t n = x_.size();
  sin1_.resize(n);
  cos1_.resize(n);
  sin2_.resize(n);
  cos2_.resize(n);
  const double k = prob.solution.wavenumber;
  for (std::size_t i = 0; i < n; ++i) {
    sin1_[i] = std::sin(k * x_[i]);
    cos1_[i] = std::cos(k * x_[i]);
    sin2_[i] = std::sin(2.0 * k * x_[i]);
    cos2_[i] = std::cos(2.0 * k * x_[i]);
  }
}

void SourceSampler::evaluate(double t, std::span<double> out) const {
  if (out.size() != x_.size()) throw std::invalid_argument("source output size mismatch");
  if (!prob_.has_source()) {
    std::fill(out.begin(), out.end(), 0.0);
    return;
  }
  const double wt = prob_.solution.omega * t;
  const double sw = std::sin(wt);
  const double cw = std::cos(wt);
  for (std::size_t i = 0; i < x_.size(); ++i) {
    // sin(a - b) and cos(a - b) with b = wt.
    const double s1 = sin1_[i] * cw - cos1_[i] * sw;
    const double c1 = cos1_[i] * cw + sin1_[i] * sw;
    const double s2 = sin2_[i] * cw - cos2_[i] * sw;
    const double c2 = cos2_[i] * cw + sin2_[i] * sw;
    out[i] = source_from(prob_, combine(prob_.solution, s1, c1, s2, c2), x_[i]);
  }
}

const double GaussLegendre5::nodes[5] = {
    -0.90617984593866399280, -0.53846931010568309104, 0.0, 0.53846931010568309104,
    0.90617984593866399280};
const double GaussLegendre5::weights[5] = {
    0.23692688505618908751, 0.47862867049936646804, 0.56888888888888888889,
    0.47862867049936646804, 0.23692688505618908751};

}  // namespace hypconv
