#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numeric>
#include <vector>

#include "hypconv/time_steppers.hpp"

using namespace hypconv;

namespace {

Tendency constant_rate(double c) {
  return [c](std::span<const double>, double, std::span<double> out) {
    for (double& v : out) v = c;
  };
}

Tendency linear_rate(double lambda) {
  return [lambda](std::span<const double> u, double, std::span<double> out) {
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = lambda * u[i];
  };
}

}  // namespace

TEST_CASE("tokens round-trip") {
  for (const char* t : {"fe1", "rk2", "rk3", "rk4", "ab2", "ab3", "ab4", "be1", "imid", "trap"}) {
    CHECK(stepper_by_name(t).token() == t);
  }
  CHECK_THROWS_AS(stepper_by_name("rk5"), std::invalid_argument);
  CHECK(explicit_steppers().size() == 7);
  CHECK(stepper_spec(Method::ab4).history_depth == 3);
  CHECK_FALSE(stepper_spec(Method::trap).is_explicit);
}

TEST_CASE("Adams-Bashforth weights sum to one") {
  for (int k = 1; k <= 4; ++k) {
    const auto w = adams_bashforth_weights(k);
    CHECK(std::accumulate(w.begin(), w.end(), 0.0) == doctest::Approx(1.0));
  }
  CHECK_THROWS(adams_bashforth_weights(5));
}

TEST_CASE("constant tendency is integrated exactly") {
  const std::vector<double> u{1.0, -2.0};
  for (const StepperSpec& s : explicit_steppers()) {
    History ordered(3);
    for (int m = s.history_depth; m >= 1; --m) ordered.push(-m * 0.1, {0.5, 0.5});
    const auto out = step_explicit(u, 0.0, 0.1, constant_rate(0.5), s, ordered);
    CHECK(out[0] == doctest::Approx(1.05));
    CHECK(out[1] == doctest::Approx(-1.95));
  }
}

TEST_CASE("RK amplification factors match the Taylor polynomials") {
  const double z = 0.1;
  const double p3 = 1 + z + z * z / 2 + z * z * z / 6;
  const double p4 = p3 + z * z * z * z / 24;
  History h;
  const std::vector<double> u{1.0};
  CHECK(std::abs(step_explicit(u, 0.0, 1.0, linear_rate(z), stepper_spec(Method::rk3), h)[0] - p3) <= 1e-12);
  CHECK(std::abs(step_explicit(u, 0.0, 1.0, linear_rate(z), stepper_spec(Method::rk4), h)[0] - p4) <= 1e-6);
  CHECK(std::abs(step_explicit(u, 0.0, 1.0, linear_rate(z), stepper_spec(Method::rk2), h)[0] -
                 (1 + z + z * z / 2)) <= 1e-14);
}

TEST_CASE("low-storage stage times are consistent with the weights") {
  for (const auto* tab : {&williamson_rk3(), &carpenter_kennedy_rk4()}) {
    // Integrating u' = 1 puts u at c_i dt before stage i and at dt at the end.
    double q = 0.0, u = 0.0;
    for (std::size_t i = 0; i < tab->a.size(); ++i) {
      CHECK(tab->c[i] == doctest::Approx(u).epsilon(1e-15));
      q = tab->a[i] * q + 1.0;
      u += tab->b[i] * q;
    }
    CHECK(u == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("AB steps need their history") {
  History empty(3);
  const std::vector<double> u{1.0};
  CHECK_THROWS_AS(step_explicit(u, 0.0, 0.1, constant_rate(1.0), stepper_spec(Method::ab3), empty),
                  std::invalid_argument);
  CHECK_THROWS(ExplicitStepper(stepper_spec(Method::be1), 1));
}

TEST_CASE("AB pushes the current tendency") {
  History h(1);
  h.push(-0.1, {2.0});
  const std::vector<double> u{1.0};
  const auto out = step_explicit(u, 0.0, 0.1, linear_rate(2.0), stepper_spec(Method::ab2), h);
  CHECK(out[0] == doctest::Approx(1.0 + 0.1 * (1.5 * 2.0 - 0.5 * 2.0)));
  REQUIRE(h.size() == 1);
  CHECK(h[0].time == 0.0);
  CHECK(h[0].tendency[0] == doctest::Approx(2.0));
}

TEST_CASE("implicit scalar steps") {
  auto zero = [](double) { return 0.0; };
  auto two = [](double) { return 2.0; };
  CHECK(step_implicit_scalar_linear(1.0, 0.0, 1.0, 1.0, zero, Method::be1) == doctest::Approx(0.5));
  CHECK(step_implicit_scalar_linear(1.0, 0.0, 1.0, 1.0, zero, Method::trap) == doctest::Approx(1.0 / 3.0));
  for (Method m : {Method::be1, Method::imid, Method::trap}) {
    CHECK(step_implicit_scalar_linear(1.0, 0.0, 0.25, 0.0, two, m) == doctest::Approx(1.5));
  }
  CHECK_THROWS(step_implicit_scalar_linear(1.0, 0.0, 1.0, -1.0, zero, Method::be1));
  CHECK_THROWS(step_implicit_scalar_linear(1.0, 0.0, 1.0, -2.0, zero, Method::imid));
  CHECK_THROWS(step_implicit_scalar_linear(1.0, 0.0, 1.0, 1.0, zero, Method::rk2));
}

TEST_CASE("bootstrap history") {
  const Tendency f = linear_rate(-1.0);
  const std::vector<double> u0{1.0};
  auto exact = [](double t) { return std::vector<double>{std::exp(-t)}; };

  const History h2 = bootstrap_history(f, stepper_spec(Method::ab2), u0, 0.0, 0.1,
                                       BootstrapMode::exact_solution, exact);
  REQUIRE(h2.size() == 1);
  CHECK(h2[0].time == doctest::Approx(-0.1));
  CHECK(h2[0].tendency[0] == doctest::Approx(-std::exp(0.1)));

  const History h4 = bootstrap_history(f, stepper_spec(Method::ab4), u0, 0.0, 0.1,
                                       BootstrapMode::exact_solution, exact);
  REQUIRE(h4.size() == 3);
  for (std::size_t m = 0; m < 3; ++m) CHECK(h4[m].time == doctest::Approx(-0.1 * (m + 1)));

  CHECK_THROWS(bootstrap_history(f, stepper_spec(Method::ab2), u0, 0.0, 0.1,
                                 BootstrapMode::exact_solution));
  CHECK_THROWS(bootstrap_history(f, stepper_spec(Method::rk4), u0, 0.0, 0.1,
                                 BootstrapMode::rk_startup));
}

TEST_CASE("RK startup agrees with exact history to fifth order") {
  const Tendency f = linear_rate(-1.0);
  auto worst = [&](double dt) {
    const double t0 = 3 * dt;
    const std::vector<double> u0{std::exp(-t0)};
    auto exact = [](double t) { return std::vector<double>{std::exp(-t)}; };
    const auto a = bootstrap_history(f, stepper_spec(Method::ab4), u0, t0, dt,
                                     BootstrapMode::exact_solution, exact);
    const auto b = bootstrap_history(f, stepper_spec(Method::ab4), u0, t0, dt,
                                     BootstrapMode::rk_startup);
    double e = 0.0;
    for (std::size_t m = 0; m < 3; ++m) e = std::max(e, std::abs(a[m].tendency[0] - b[m].tendency[0]));
    return e;
  };
  const double e1 = worst(0.1), e2 = worst(0.05);
  CHECK(std::log2(e1 / e2) == doctest::Approx(5.0).epsilon(0.05));
}
