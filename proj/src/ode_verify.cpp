#include "hypconv/ode_verify.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "hypconv/fit.hpp"

namespace hypconv {

double Forcing::operator()(double t) const { return derivative(0, t); }

double Forcing::derivative(int k, double t) const {
  switch (kind) {
    case Kind::zero:
      return 0.0;
    case Kind::constant:
      return k == 0 ? value : 0.0;
    case Kind::sine:
      switch (k % 4) {
        case 0: return std::sin(t);
        case 1: return std::cos(t);
        case 2: return -std::sin(t);
        default: return -std::cos(t);
      }
  }
  return 0.0;
}

ScalarODE ScalarODE::linear_ode(double lambda, Forcing forcing) {
  ScalarODE ode;
  ode.linear = Linear{lambda, forcing};
  ode.rhs = [lambda, forcing](double u, double t) { return -lambda * u + forcing(t); };
  ode.exact = [lambda, forcing](double u0, double t0, double t) {
    const double decay = std::exp(-lambda * (t - t0));
    switch (forcing.kind) {
      case Forcing::Kind::zero:
        return u0 * decay;
      case Forcing::Kind::constant: {
        if (lambda == 0.0) return u0 + forcing.value * (t - t0);
        const double steady = forcing.value / lambda;
        return steady + (u0 - steady) * decay;
      }
      case Forcing::Kind::sine: {
        const auto particular = [lambda](double s) {
          return (lambda * std::sin(s) - std::cos(s)) / (1.0 + lambda * lambda);
        };
        return particular(t) + (u0 - particular(t0)) * decay;
      }
    }
    return 0.0;
  };
  return ode;
}

ScalarODE ode_by_name(std::string_view name) {
  if (name == "decay") return ScalarODE::linear_ode(1.0, {Forcing::Kind::zero, 0.0});
  if (name == "forced") return ScalarODE::linear_ode(1.0, {Forcing::Kind::sine, 0.0});
  if (name == "constant") return ScalarODE::linear_ode(0.0, {Forcing::Kind::constant, 1.0});
  throw std::invalid_argument("unknown ODE preset '" + std::string(name) + "'");
}

namespace {

double reference_solution(const ScalarODE& ode, double u0, double t0, double t1) {
  if (ode.exact) return ode.exact(u0, t0, t1);
  // RK4 with a hundredth of the step.
  const Tendency f = [&ode](std::span<const double> u, double t, std::span<double> out) {
    out[0] = ode.rhs(u[0], t);
  };
  ExplicitStepper rk4(stepper_spec(Method::rk4), 1);
  History none;
  std::vector<double> u{u0};
  const int substeps = 100;
  const double h = (t1 - t0) / substeps;
  for (int i = 0; i < substeps; ++i) rk4.step(f, u, t0 + i * h, h, none);
  return u[0];
}

}  // namespace

double one_step_error(const ScalarODE& ode, const StepperSpec& spec, double u0, double t0,
                      double dt) {
  const double reference = reference_solution(ode, u0, t0, t0 + dt);
  if (!spec.is_explicit) {
    if (!ode.linear) {
      throw std::invalid_argument("implicit one-step error needs a linear ODE");
    }
    const auto& lin = *ode.linear;
    const Forcing forcing = lin.forcing;
    const double next = step_implicit_scalar_linear(
        u0, t0, dt, lin.lambda, [forcing](double t) { return forcing(t); }, spec.method);
    return reference - next;
  }

  const Tendency f = [&ode](std::span<const double> u, double t, std::span<double> out) {
    out[0] = ode.rhs(u[0], t);
  };
  History hist(3);
  if (spec.history_depth > 0) {
    hist = bootstrap_history(f, spec, std::vector<double>{u0}, t0, dt,
                             BootstrapMode::exact_solution, [&](double t) {
                               return std::vector<double>{reference_solution(ode, u0, t0, t)};
                             });
  }
  ExplicitStepper stepper(spec, 1);
  std::vector<double> u{u0};
  stepper.step(f, u, t0, dt, hist);
  return reference - u[0];
}

double estimate_local_order(const ScalarODE& ode, const StepperSpec& spec, double u0, double t0,
                            std::span<const double> dt_seq) {
  std::vector<double> xs, ys;
  for (double dt : dt_seq) {
    const double e = std::abs(one_step_error(ode, spec, u0, t0, dt));
    if (e < 1e-14) continue;
    xs.push_back(dt);
    ys.push_back(e);
  }
  if (xs.size() < 3) {
    throw std::invalid_argument("fewer than 3 step sizes left a measurable error");
  }
  return fit_loglog_slope(xs, ys).slope;
}

double estimate_lte_coefficient(const ScalarODE& ode, const StepperSpec& spec, double u0,
                                double t0, std::span<const double> dt_seq) {
  if (dt_seq.size() < 2) throw std::invalid_argument("need at least two step sizes");
  const int p = spec.order + 1;
  // Two smallest distinct steps.
  double h1 = 0.0, h2 = 0.0;
  for (double h : dt_seq) {
    if (h2 == 0.0 || h < h2) {
      h1 = h2;
      h2 = h;
    } else if ((h1 == 0.0 || h < h1) && h != h2) {
      h1 = h;
    }
  }
  if (h1 == 0.0 || h1 == h2) throw std::invalid_argument("need two distinct step sizes");
  const double r1 = one_step_error(ode, spec, u0, t0, h1) / std::pow(h1, p);
  const double r2 = one_step_error(ode, spec, u0, t0, h2) / std::pow(h2, p);
  // r(h) = c + d h: eliminate d.
  return (r2 * h1 - r1 * h2) / (h1 - h2);
}

double analytic_Fk_linear(double lambda, const Forcing& f, double u, double t, int k) {
  const double F = -lambda * u + f(t);
  const double f1 = f.derivative(1, t);
  const double f2 = f.derivative(2, t);
  const double f3 = f.derivative(3, t);
  const double l2 = lambda * lambda;
  switch (k) {
    case 1: return F;
    case 2: return f1 - lambda * F;
    case 3: return f2 - lambda * f1 + l2 * F;
    case 4: return f3 - lambda * f2 + l2 * f1 - l2 * lambda * F;
  }
  throw std::invalid_argument("derivative order must be 1 to 4");
}

std::vector<double> geometric_steps(double largest, double smallest, int count) {
  if (count < 2 || !(largest > smallest) || !(smallest > 0.0)) {
    throw std::invalid_argument("geometric_steps needs count >= 2 and largest > smallest > 0");
  }
  std::vector<double> out(static_cast<std::size_t>(count));
  const double ratio = std::pow(smallest / largest, 1.0 / (count - 1));
  for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = largest * std::pow(ratio, i);
  out.back() = smallest;
  return out;
}

namespace {

// c_{order+1}/(order+1)! for u' = -lambda u + f where a closed form is known.
std::optional<double> closed_form_coefficient(const ScalarODE::Linear& lin, Method m, double u,
                                              double t) {
  const double lam = lin.lambda;
  const auto Fk = [&](int k) { return analytic_Fk_linear(lam, lin.forcing, u, t, k); };
  const double f1 = lin.forcing.derivative(1, t);
  const double f2 = lin.forcing.derivative(2, t);
  const double f3 = lin.forcing.derivative(3, t);
  switch (m) {
    case Method::fe1: return Fk(2) / 2.0;
    case Method::rk2:
      // F_u F_t + F_u^2 F + F_tt / 4 with F_u = -lambda.
      return (-lam * f1 + lam * lam * Fk(1) + 0.25 * f2) / 6.0;
    case Method::rk3:
      // (18 F F_u^3 + 18 F_t F_u^2 + 6 F_tt F_u + F_ttt) / 18.
      return (-18.0 * lam * lam * lam * Fk(1) + 18.0 * lam * lam * f1 - 6.0 * lam * f2 + f3) /
             18.0 / 24.0;
    case Method::ab2: return 2.5 * Fk(3) / 6.0;
    case Method::ab3: return 9.0 * Fk(4) / 24.0;
    case Method::be1: return -Fk(2) / 2.0;
    case Method::imid:
      return (0.25 * f2 + 0.5 * lam * f1 - 0.5 * lam * lam * Fk(1)) / 6.0;
    case Method::trap: return -0.5 * Fk(3) / 6.0;
    default: return std::nullopt;
  }
}

}  // namespace

OdeVerifyReport verify_ode_method(std::string_view ode_name, const StepperSpec& spec) {
  const ScalarODE ode = ode_by_name(ode_name);
  const double t0 = ode_name == "forced" ? 1.0 : 0.0;
  const double u0 = 1.0;
  // Fifth-order local errors sink into round-off below dt ~ 5e-3.
  const auto dts = spec.order >= 4 ? geometric_steps(5e-2, 5e-3, 4) : geometric_steps(1e-2, 1e-3, 4);

  OdeVerifyReport rep;
  rep.spec = spec;
  rep.expected_slope = spec.order + 1;
  rep.coefficient = estimate_lte_coefficient(ode, spec, u0, t0, dts);
  if (ode.linear) rep.expected_coefficient = closed_form_coefficient(*ode.linear, spec.method, u0, t0);

  const bool degenerate = rep.expected_coefficient && *rep.expected_coefficient == 0.0;
  if (degenerate) {
    // Every derivative past the first vanishes; the error is round-off only.
    rep.slope = 0.0;
    rep.pass = std::abs(rep.coefficient) * std::pow(dts.front(), spec.order + 1) <= 1e-10;
    return rep;
  }
  rep.slope = estimate_local_order(ode, spec, u0, t0, dts);
  rep.pass = std::abs(rep.slope - rep.expected_slope) <= 0.1;
  if (rep.expected_coefficient) {
    rep.pass = rep.pass && std::abs(rep.coefficient - *rep.expected_coefficient) <=
                               0.05 * std::abs(*rep.expected_coefficient);
  }
  return rep;
}

}  // namespace hypconv
