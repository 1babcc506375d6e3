// Acceptance harness: one PASS/FAIL line per criterion, non-zero exit when
// any criterion fails. Each check prints the measured numbers it judged.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "hypconv/convergence.hpp"
#include "hypconv/ode_verify.hpp"
#include "hypconv/report.hpp"
#include "hypconv/spatial_ppr.hpp"

using namespace hypconv;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "!") + what;
  }
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Slope through consecutive pairs of fit points.
std::vector<double> local_slopes(const StudyResult& r) {
  std::vector<double> xs, ys, out;
  r.fit_points(xs, ys);
  for (std::size_t i = 1; i < xs.size(); ++i) {
    out.push_back(std::log(ys[i] / ys[i - 1]) / std::log(xs[i] / xs[i - 1]));
  }
  return out;
}

StudyResult default_study(const char* problem, const char* spatial, Method m, RefinementMode mode,
                          bool cell_integrated = false) {
  const ProblemSpec prob = problem_by_name(problem);
  SchemeConfig scheme = SchemeConfig::from_token(spatial);
  if (cell_integrated) scheme.prognostic = StateKind::cell_integrals;
  const RefinementPlan plan = default_plan(prob.id, scheme.spatial, m, mode);
  return run_study(plan, prob, scheme, stepper_spec(m));
}

Outcome criterion1() {
  Outcome o;
  const auto t0 = Clock::now();
  for (Method m : {Method::fe1, Method::rk2, Method::rk3, Method::ab2, Method::ab3, Method::be1,
                   Method::imid, Method::trap}) {
    const OdeVerifyReport rep = verify_ode_method("forced", stepper_spec(m));
    o.check(std::abs(rep.slope - (rep.spec.order + 1)) <= 0.1,
            std::string(rep.spec.token()) + fmt(" %.3f", rep.slope));
  }
  const double dt = seconds_since(t0);
  o.check(dt < 1.0, fmt("%.3fs", dt));
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto t0 = Clock::now();
  const ScalarODE ode = ode_by_name("decay");
  const auto dts = geometric_steps(1e-2, 1e-3, 4);
  const double u0 = 1.0, ts = 0.0;
  struct Row {
    Method m;
    int k;         // which derivative F^(k) the coefficient multiplies
    double ratio;  // expected coefficient / F^(k)
  };
  for (const Row& row : {Row{Method::ab2, 3, 2.5 / 6.0}, Row{Method::ab3, 4, 9.0 / 24.0},
                         Row{Method::be1, 2, -0.5}, Row{Method::trap, 3, -0.5 / 6.0}}) {
    const StepperSpec spec = stepper_spec(row.m);
    const double c = estimate_lte_coefficient(ode, spec, u0, ts, dts);
    const double fk = analytic_Fk_linear(1.0, Forcing{}, u0, ts, row.k);
    const double ratio = c / fk;
    o.check(std::abs(ratio / row.ratio - 1.0) <= 0.05,
            std::string(spec.token()) + fmt(" %.5f vs %.5f", ratio, row.ratio));
  }
  const double dt = seconds_since(t0);
  o.check(dt < 1.0, fmt("%.3fs", dt));
  return o;
}

Outcome criterion3() {
  Outcome o;
  const auto t0 = Clock::now();
  for (const char* fd : {"fd1", "fd2", "fd3"}) {
    for (Method m : {Method::fe1, Method::rk2, Method::rk3, Method::rk4}) {
      const StudyResult r = default_study("linear", fd, m, RefinementMode::space_time);
      const int expected = std::min(SchemeConfig::from_token(fd).fd_order(), stepper_spec(m).order);
      const double slope = r.fit ? r.fit->slope : NAN;
      o.check(std::abs(slope - expected) <= 0.15,
              std::string(fd) + "+" + r.stepper + fmt(" %.3f", slope));
    }
  }
  o.detail += fmt("; %.1fs", seconds_since(t0));
  return o;
}

Outcome criterion4() {
  Outcome o;
  for (const char* problem : {"linear", "nonlinear"}) {
    for (const StepperSpec& st : explicit_steppers()) {
      const StudyResult r = default_study(problem, "fd1", st.method, RefinementMode::time_only);
      const double slope = r.fit ? r.fit->slope : NAN;
      o.check(std::abs(slope - st.order) <= 0.15,
              std::string(problem).substr(0, 3) + " time " + r.stepper + fmt(" %.3f", slope));
    }
    const StudyResult r =
        default_study(problem, "fd1", Method::fe1, RefinementMode::space_only);
    const double slope = r.fit ? r.fit->slope : NAN;
    o.check(std::abs(slope - 1.0) <= 0.15,
            std::string(problem).substr(0, 3) + " space" + fmt(" %.3f", slope));
  }
  return o;
}

Outcome criterion5() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto dir = std::filesystem::temp_directory_path() / "hypconv_acceptance_fig2";
  const FigureSummary fig = reproduce_figure("fig2", dir.string());
  const auto& sweep = fig.time_sweep;  // increasing dt
  double e_small = NAN, e_large = NAN;
  for (const auto& [dt, e] : sweep) {
    if (dt == 1e-4) e_small = e;
    if (dt == 2e-3) e_large = e;
  }
  o.check(e_small > e_large, fmt("l2(1e-4)=%.4e > l2(2e-3)=%.4e", e_small, e_large));
  bool monotone = sweep.size() >= 4;
  for (std::size_t i = 1; i < sweep.size(); ++i) monotone &= sweep[i].second <= sweep[i - 1].second;
  o.check(monotone, fmt("non-increasing over %.0f steps up to C=%.3f", double(sweep.size()),
                        sweep.back().first * 256));
  const double dt = seconds_since(t0);
  o.check(dt < 10.0, fmt("%.2fs", dt));
  std::filesystem::remove_all(dir);
  return o;
}

Outcome criterion6() {
  Outcome o;
  // Edge interpolation on exact averages of a smooth periodic profile.
  {
    const ProblemSpec prob = linear_preset();
    std::vector<double> ns, errs;
    for (std::size_t n : {16u, 32u, 64u, 128u, 256u}) {
      const UniformMesh mesh(n, {0.0, 1.0});
      const auto e = mesh.edges();
      std::vector<double> avg(n);
      for (std::size_t j = 0; j < n; ++j) avg[j] = exact_cell_average(prob, e[j], e[j + 1], 0.0);
      const auto edges = interpolate_edges(avg);
      double err = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        err = std::max(err, std::abs(edges[i] - exact_solution(prob, e[i], 0.0)));
      }
      ns.push_back(mesh.dx());
      errs.push_back(err);
    }
    const double slope = fit_loglog_slope(ns, errs).slope;
    o.check(std::abs(slope - 4.0) <= 0.2, fmt("edges %.3f", slope));
  }
  // RK4 ladder n = 2^5..2^10, eta 0.25, T = 1/8.
  RefinementPlan plan;
  plan.mode = RefinementMode::space_time;
  plan.n_cells_seq = doubling_sequence(32, 1024);
  plan.eta_space = 0.25;
  plan.T_horizon = 0.125;
  const ProblemSpec prob = linear_preset();
  const StepperSpec rk4 = stepper_spec(Method::rk4);
  {
    const StudyResult r = run_study(plan, prob, SchemeConfig::finite_volume(false, true), rk4);
    const double slope = r.fit ? r.fit->slope : NAN;
    o.check(std::abs(slope - 4.0) <= 0.3, fmt("integrals %.3f", slope));
  }
  {
    const StudyResult r = run_study(plan, prob, SchemeConfig::finite_volume(false, false), rk4);
    const double slope = r.fit ? r.fit->slope : NAN;
    o.check(std::abs(slope - 3.0) <= 0.3, fmt("averages %.3f", slope));
  }
  // Order-reduction knee for the second-order steppers.
  for (Method m : {Method::rk2, Method::ab2}) {
    const StudyResult r = default_study("linear", "ppr", m, RefinementMode::space_time);
    const std::size_t n = r.levels.size();
    const auto early = r.slope_between(0, 3);
    const auto late = r.slope_between(n - 3, n);
    const bool ok = early && late && *late <= *early - 0.5;
    o.check(ok, r.stepper + fmt(" knee %.3f -> %.3f", early.value_or(NAN), late.value_or(NAN)));
  }
  return o;
}

Outcome criterion7() {
  Outcome o;
  const auto t0 = Clock::now();
  const ProblemSpec prob = inviscid_burgers_preset();
  for (bool monotone : {false, true}) {
    const std::size_t n = 200;
    auto mesh = std::make_shared<const UniformMesh>(n, Interval{0.0, 1.0});
    const FvOperator op(prob, mesh, monotone);
    const Tendency f = [&](std::span<const double> u, double t, std::span<double> out) {
      op.tendency(u, t, out);
    };
    std::vector<double> u(n);
    const auto c = mesh->centers();
    for (std::size_t j = 0; j < n; ++j) {
      u[j] = 0.5 + std::sin(2 * M_PI * c[j]) + 0.3 * (c[j] > 0.3 && c[j] < 0.5);
    }
    const double dt = 0.2 * mesh->dx() / 1.8;
    ExplicitStepper stepper(stepper_spec(Method::rk3), n);
    History hist;
    double worst = 0.0;
    auto total = [&] {
      double s = 0.0;
      for (double v : u) s += v * mesh->dx();
      return s;
    };
    double before = total();
    for (int s = 0; s < 100; ++s) {
      stepper.step(f, u, s * dt, dt, hist);
      const double after = total();
      worst = std::max(worst, std::abs(after - before));
      before = after;
    }
    o.check(worst < 1e-13 * static_cast<double>(n),
            std::string(monotone ? "mono" : "plain") + fmt(" max|dM|=%.2e", worst));
  }
  const double dt = seconds_since(t0);
  o.check(dt < 1.0, fmt("%.3fs", dt));
  return o;
}

Outcome criterion8() {
  Outcome o;
  auto run = [&](std::size_t nf, std::size_t nc) {
    const UniformMesh fine(nf, {0.0, 1.0}), coarse(nc, {0.0, 1.0});
    std::vector<double> mean(nf);
    const auto c = fine.centers();
    for (std::size_t j = 0; j < nf; ++j) mean[j] = 2.0 + std::sin(6.0 * c[j]) + (j % 3 == 0);
    double fine_total = 0.0;
    for (double v : mean) fine_total += v * fine.dx();
    for (bool monotone : {false, true}) {
      const auto coarse_int = integrate_to_coarse(reconstruct(mean, monotone), fine, coarse);
      double coarse_total = 0.0;
      for (double v : coarse_int) coarse_total += v;
      const double rel = std::abs(coarse_total - fine_total) / std::abs(fine_total);
      o.check(rel < 1e-12, fmt("%.0f", double(nf)) + "->" + fmt("%.0f", double(nc)) +
                               (monotone ? " mono" : "") + fmt(" %.1e", rel));
    }
  };
  run(128, 64);
  run(5, 3);
  return o;
}

Outcome criterion9() {
  Outcome o;
  {
    const StudyResult r = default_study("linear", "ppr-mono", Method::fe1, RefinementMode::space_time);
    const auto s = local_slopes(r);
    const bool ok = s.size() >= 3 && s.back() < s.front() && std::abs(s.back() - 1.0) <= 0.3;
    o.check(ok, fmt("fe1 local slope %.3f -> %.3f", s.front(), s.back()));
  }
  {
    const StudyResult r = default_study("linear", "ppr-mono", Method::rk3, RefinementMode::space_time);
    const auto s = local_slopes(r);
    double worst = -1e300;
    for (double v : s) worst = std::max(worst, v);
    o.check(!s.empty() && worst <= 3.3, fmt("rk3 max local slope %.3f", worst));
  }
  return o;
}

Outcome criterion10() {
  Outcome o;
  // Time-only fields u_i = C + a dt_i^p g(x): consecutive differences scale
  // exactly as dt^p.
  const double p = 2.7, a = 0.37;
  auto mesh = std::make_shared<const UniformMesh>(32, Interval{0.0, 1.0});
  std::vector<LevelField> fields;
  std::vector<double> dts;
  for (int k = 0; k < 6; ++k) {
    const double dt = 0.1 / std::ldexp(1.0, k);
    dts.push_back(dt);
    LevelField f{mesh, std::vector<double>(32)};
    for (std::size_t j = 0; j < 32; ++j) {
      f.values[j] = 1.0 + a * std::pow(dt, p) * std::cos(2 * M_PI * mesh->nodes()[j]);
    }
    fields.push_back(std::move(f));
  }
  const auto d = successive_differences(fields, RefinementMode::time_only,
                                        SchemeConfig::from_token("fd1"));
  const std::vector<double> xs(dts.begin() + 1, dts.end());
  const double slope = fit_loglog_slope(xs, d).slope;
  o.check(std::abs(slope - p) < 1e-6, fmt("slope err %.2e", std::abs(slope - p)));

  const double zg = 3.25, zg1 = -1.5, gamma = 2.0;
  std::vector<double> hx, hy;
  for (double h = 0.2; h > 1e-3; h /= 2) {
    hx.push_back(h);
    hy.push_back(zg * std::pow(h, gamma) + zg1 * std::pow(h, gamma + 1));
  }
  const TwoTermFit t = fit_two_term(hx, hy, gamma);
  const double err = std::max(std::abs(t.zeta_gamma - zg), std::abs(t.zeta_gamma_plus_1 - zg1));
  o.check(err < 1e-10, fmt("two-term err %.2e", err));
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"1 ODE local order", criterion1},
      {"2 ODE leading coefficients", criterion2},
      {"3 FD min(alpha,beta) rule", criterion3},
      {"4 successive-difference recovery", criterion4},
      {"5 error growth under time refinement", criterion5},
      {"6 parabolic reconstruction order", criterion6},
      {"7 finite-volume conservation", criterion7},
      {"8 restriction conservation", criterion8},
      {"9 monotone finite-volume orders", criterion9},
      {"10 harness self-test", criterion10},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
