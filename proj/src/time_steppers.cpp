#include "hypconv/time_steppers.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>

namespace hypconv {

std::string_view StepperSpec::token() const {
  switch (method) {
    case Method::fe1: return "fe1";
    case Method::rk2: return "rk2";
    case Method::rk3: return "rk3";
    case Method::rk4: return "rk4";
    case Method::ab2: return "ab2";
    case Method::ab3: return "ab3";
    case Method::ab4: return "ab4";
    case Method::be1: return "be1";
    case Method::imid: return "imid";
    case Method::trap: return "trap";
  }
  return "?";
}

StepperSpec stepper_spec(Method m) {
  switch (m) {
    case Method::fe1: return {m, 1, 0, true};
    case Method::rk2: return {m, 2, 0, true};
    case Method::rk3: return {m, 3, 0, true};
    case Method::rk4: return {m, 4, 0, true};
    case Method::ab2: return {m, 2, 1, true};
    case Method::ab3: return {m, 3, 2, true};
    case Method::ab4: return {m, 4, 3, true};
    case Method::be1: return {m, 1, 0, false};
    case Method::imid: return {m, 2, 0, false};
    case Method::trap: return {m, 2, 0, false};
  }
  throw std::invalid_argument("unknown method");
}

StepperSpec stepper_by_name(std::string_view token) {
  for (Method m : {Method::fe1, Method::rk2, Method::rk3, Method::rk4, Method::ab2, Method::ab3,
                   Method::ab4, Method::be1, Method::imid, Method::trap}) {
    const auto s = stepper_spec(m);
    if (s.token() == token) return s;
  }
  throw std::invalid_argument("unknown time stepper '" + std::string(token) + "'");
}

std::vector<StepperSpec> explicit_steppers() {
  return {stepper_spec(Method::fe1), stepper_spec(Method::rk2), stepper_spec(Method::rk3),
          stepper_spec(Method::rk4), stepper_spec(Method::ab2), stepper_spec(Method::ab3),
          stepper_spec(Method::ab4)};
}

void History::push(double time, std::vector<double> tendency) {
  entries_.push_front({time, std::move(tendency)});
  while (entries_.size() > capacity_) entries_.pop_back();
}

const LowStorageTableau& williamson_rk3() {
  static const LowStorageTableau t{
      {0.0, -5.0 / 9.0, -153.0 / 128.0},
      {1.0 / 3.0, 15.0 / 16.0, 8.0 / 15.0},
      {0.0, 1.0 / 3.0, 3.0 / 4.0},
  };
  return t;
}

// Stage times consistent with a and b: with f = 1 the registers give
// q_i = a_i q_{i-1} + 1 and u advances by b_i q_i, so c_i is u before stage i.
static std::vector<double> stage_times(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> c(a.size());
  double q = 0.0, u = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    c[i] = u;
    q = a[i] * q + 1.0;
    u += b[i] * q;
  }
  return c;
}

const LowStorageTableau& carpenter_kennedy_rk4() {
  // The commonly quoted third stage time (2526269341429/6820363183890) is off by
  // 4e-8 from what the a, b coefficients imply, which leaves an O(dt) error
  // near 1e-12. The times are derived instead.
  static const LowStorageTableau t = [] {
    LowStorageTableau r;
    r.a = {0.0, -567301805773.0 / 1357537059087.0, -2404267990393.0 / 2016746695238.0,
           -3550918686646.0 / 2091501179385.0, -1275806237668.0 / 842570457699.0};
    r.b = {1432997174477.0 / 9575080441755.0, 5161836677717.0 / 13612068292357.0,
           1720146321549.0 / 2090206949498.0, 3134564353537.0 / 4481467310338.0,
           2277821191437.0 / 14882151754819.0};
    r.c = stage_times(r.a, r.b);
    return r;
  }();
  return t;
}

std::span<const double> adams_bashforth_weights(int order) {
  static const std::array<double, 1> ab1{1.0};
  static const std::array<double, 2> ab2{3.0 / 2.0, -1.0 / 2.0};
  static const std::array<double, 3> ab3{23.0 / 12.0, -16.0 / 12.0, 5.0 / 12.0};
  static const std::array<double, 4> ab4{55.0 / 24.0, -59.0 / 24.0, 37.0 / 24.0, -9.0 / 24.0};
  switch (order) {
    case 1: return ab1;
    case 2: return ab2;
    case 3: return ab3;
    case 4: return ab4;
  }
  throw std::invalid_argument("Adams-Bashforth order must be 1 to 4");
}

ExplicitStepper::ExplicitStepper(StepperSpec spec, std::size_t n)
    : spec_(spec), k1_(n), k2_(n), reg_(n) {
  if (!spec.is_explicit) {
    throw std::invalid_argument("ExplicitStepper cannot run implicit method " +
                                std::string(spec.token()));
  }
}

namespace {

void low_storage_step(const LowStorageTableau& tab, const Tendency& f, std::span<double> u,
                      double t, double dt, std::vector<double>& q, std::vector<double>& k) {
  const std::size_t n = u.size();
  for (std::size_t s = 0; s < tab.a.size(); ++s) {
    f(u, t + tab.c[s] * dt, k);
    const double a = tab.a[s];
    const double b = tab.b[s];
    for (std::size_t i = 0; i < n; ++i) {
      q[i] = a * q[i] + dt * k[i];
      u[i] += b * q[i];
    }
  }
}

}  // namespace

void ExplicitStepper::step(const Tendency& f, std::span<double> u, double t, double dt,
                           History& hist) {
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  const std::size_t n = u.size();
  if (k1_.size() != n) throw std::invalid_argument("state size changed under the stepper");

  switch (spec_.method) {
    case Method::fe1:
      f(u, t, k1_);
      for (std::size_t i = 0; i < n; ++i) u[i] += dt * k1_[i];
      return;
    case Method::rk2:
      f(u, t, k1_);
      for (std::size_t i = 0; i < n; ++i) reg_[i] = u[i] + 0.5 * dt * k1_[i];
      f(reg_, t + 0.5 * dt, k2_);
      for (std::size_t i = 0; i < n; ++i) u[i] += dt * k2_[i];
      return;
    case Method::rk3:
      // Two registers: the state and the accumulator q (k2_ is only the
      // evaluation buffer that f writes into).
      low_storage_step(williamson_rk3(), f, u, t, dt, reg_, k2_);
      return;
    case Method::rk4:
      low_storage_step(carpenter_kennedy_rk4(), f, u, t, dt, reg_, k2_);
      return;
    case Method::ab2:
    case Method::ab3:
    case Method::ab4: {
      const auto depth = static_cast<std::size_t>(spec_.history_depth);
      if (hist.size() < depth) {
        throw std::invalid_argument("Adams-Bashforth step needs " + std::to_string(depth) +
                                    " history entries, have " + std::to_string(hist.size()));
      }
      if (hist.capacity() < depth) {
        throw std::invalid_argument("history capacity is below the method's depth");
      }
      const auto w = adams_bashforth_weights(spec_.order);
      f(u, t, k1_);
      for (std::size_t i = 0; i < n; ++i) {
        double acc = w[0] * k1_[i];
        for (std::size_t m = 1; m < w.size(); ++m) acc += w[m] * hist[m - 1].tendency[i];
        u[i] += dt * acc;
      }
      hist.push(t, k1_);
      return;
    }
    default:
      break;
  }
  throw std::invalid_argument("not an explicit method");
}

std::vector<double> step_explicit(std::span<const double> u, double t, double dt,
                                  const Tendency& f, const StepperSpec& spec, History& hist) {
  std::vector<double> out(u.begin(), u.end());
  ExplicitStepper stepper(spec, out.size());
  // Fresh scratch registers each call: RK accumulators start from zero.
  stepper.step(f, out, t, dt, hist);
  return out;
}

double step_implicit_scalar_linear(double u, double t, double dt, double lambda,
                                   const std::function<double(double)>& forcing, Method method) {
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  switch (method) {
    case Method::be1: {
      const double den = 1.0 + lambda * dt;
      if (den == 0.0) throw std::invalid_argument("backward Euler: 1 + lambda dt is zero");
      return (u + dt * forcing(t + dt)) / den;
    }
    case Method::imid: {
      const double den = 1.0 + 0.5 * lambda * dt;
      if (den == 0.0) throw std::invalid_argument("implicit midpoint: 1 + lambda dt/2 is zero");
      return ((1.0 - 0.5 * lambda * dt) * u + dt * forcing(t + 0.5 * dt)) / den;
    }
    case Method::trap: {
      const double den = 1.0 + 0.5 * lambda * dt;
      if (den == 0.0) throw std::invalid_argument("trapezoidal: 1 + lambda dt/2 is zero");
      return ((1.0 - 0.5 * lambda * dt) * u + 0.5 * dt * (forcing(t) + forcing(t + dt))) / den;
    }
    default:
      throw std::invalid_argument("step_implicit_scalar_linear takes be1, imid or trap");
  }
}

History bootstrap_history(const Tendency& f, const StepperSpec& spec, std::span<const double> u0,
                          double t0, double dt, BootstrapMode mode,
                          const std::function<std::vector<double>(double)>& exact) {
  if (spec.history_depth < 1) {
    throw std::invalid_argument("method " + std::string(spec.token()) + " keeps no history");
  }
  const auto depth = static_cast<std::size_t>(spec.history_depth);
  const std::size_t n = u0.size();
  History hist(depth);
  std::vector<std::vector<double>> past(depth);  // past[m-1] ~ u(t0 - m dt)

  if (mode == BootstrapMode::exact_solution) {
    if (!exact) throw std::invalid_argument("exact-solution bootstrap needs an exact solution");
    for (std::size_t m = 1; m <= depth; ++m) {
      past[m - 1] = exact(t0 - static_cast<double>(m) * dt);
      if (past[m - 1].size() != n) throw std::invalid_argument("exact state has the wrong size");
    }
  } else {
    // RK4 with a negative step is still fourth order; the backward sweep only
    // spans `depth` steps.
    std::vector<double> u(u0.begin(), u0.end());
    std::vector<double> q(n), k(n);
    const auto& tab = carpenter_kennedy_rk4();
    for (std::size_t m = 1; m <= depth; ++m) {
      std::fill(q.begin(), q.end(), 0.0);
      const double t = t0 - static_cast<double>(m - 1) * dt;
      for (std::size_t s = 0; s < tab.a.size(); ++s) {
        f(u, t - tab.c[s] * dt, k);
        for (std::size_t i = 0; i < n; ++i) {
          q[i] = tab.a[s] * q[i] - dt * k[i];
          u[i] += tab.b[s] * q[i];
        }
      }
      past[m - 1] = u;
    }
  }

  // Oldest first so that the newest (t0 - dt) ends up at age 0.
  for (std::size_t m = depth; m >= 1; --m) {
    const double tm = t0 - static_cast<double>(m) * dt;
    std::vector<double> fm(n);
    f(past[m - 1], tm, fm);
    hist.push(tm, std::move(fm));
  }
  return hist;
}

}  // namespace hypconv
