// hypconv: solve / converge / ode-verify / figure.
//
// Exit codes: 0 success, 1 usage error, 2 unstable level with --strict.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "hypconv/ode_verify.hpp"
#include "hypconv/report.hpp"

using namespace hypconv;

namespace {

constexpr int kUsage = 1;
constexpr int kUnstable = 2;

int run_solve_cmd(const RunConfig& cfg) {
  const ProblemSpec prob = cfg.problem_spec();
  const SchemeConfig scheme = cfg.scheme();
  const StepperSpec stepper = cfg.stepper_spec();
  const auto& plan = cfg.plan;
  const std::size_t n = plan.n_cells_seq.front();
  const double dx = 1.0 / static_cast<double>(n);
  const double eta = cfg.mode == RefinementMode::time_only ? plan.eta_time : plan.eta_space;
  const double dt = snap_time_step(eta * dx, plan.T_horizon);
  const SolveResult r = run_solve(prob, scheme, stepper, n, dt, plan.T_horizon);

  std::printf("%s %s %s n=%zu dt=%.6g steps=%zu T=%g l2=%.6e linf=%.6e%s\n",
              cfg.problem.c_str(), cfg.spatial.c_str(), cfg.stepper.c_str(), n, dt, r.steps,
              plan.T_horizon, r.error_l2, r.error_linf, r.stable ? "" : " UNSTABLE");

  std::filesystem::create_directories(cfg.out_dir);
  const std::string tag = "solve_" + cfg.problem + "_" + cfg.spatial + "_" + cfg.stepper;
  const auto dir = std::filesystem::path(cfg.out_dir);
  const auto pts = scheme.is_finite_volume() ? r.state.mesh->centers() : r.state.mesh->nodes();
  const double scale = scheme.prognostic == StateKind::cell_integrals ? dx : 1.0;
  {
    std::ofstream f(dir / (tag + ".csv"), std::ios::binary);
    if (!f) throw std::runtime_error("cannot write solution CSV");
    f << "x,numerical,error\n";
    char line[96];
    for (std::size_t j = 0; j < n; ++j) {
      std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", pts[j], r.state.data[j] / scale,
                    r.error[j] / scale);
      f << line;
    }
  }
  if (r.stable) {
    Series num{"numerical", {pts.begin(), pts.end()}, {}};
    Series exact{"exact", {}, {}};
    for (std::size_t j = 0; j < n; ++j) num.ys.push_back(r.state.data[j] / scale);
    for (int i = 0; i <= 400; ++i) {
      exact.xs.push_back(i / 400.0);
      exact.ys.push_back(exact_solution(prob, i / 400.0, plan.T_horizon));
    }
    emit_profile_svg({num, exact}, (dir / (tag + ".svg")).string(), tag);
  }
  return (!r.stable && cfg.strict) ? kUnstable : 0;
}

int run_converge_cmd(const RunConfig& cfg) {
  const StudyResult r =
      run_study(cfg.plan, cfg.problem_spec(), cfg.scheme(), cfg.stepper_spec(), cfg.norm);
  std::filesystem::create_directories(cfg.out_dir);
  const auto dir = std::filesystem::path(cfg.out_dir);
  const std::string tag = study_tag(r);

  std::vector<std::string> meta;
  meta.push_back("prognostic=" + std::string(cfg.cell_integrated ? "integrals" : "averages"));
  char buf[64];
  std::snprintf(buf, sizeof buf, "horizon=%g", cfg.plan.T_horizon);
  meta.push_back(buf);
  std::string ov = "overrides=";
  for (std::size_t i = 0; i < cfg.overrides.size(); ++i) {
    ov += (i ? ";" : "") + cfg.overrides[i];
  }
  meta.push_back(ov);
  emit_csv(r, (dir / (tag + ".csv")).string(), meta);

  Series s{tag, {}, {}};
  r.fit_points(s.xs, s.ys);
  if (!s.xs.empty()) emit_loglog_svg({s}, {r.gamma}, (dir / (tag + ".svg")).string(), tag);

  bool unstable = false;
  std::printf("%8s %12s %12s %14s %14s %14s\n", "n_cells", "dx", "dt", "error_l2",
              "error_linf", "succ_diff");
  for (const auto& l : r.levels) {
    unstable |= !l.stable;
    std::printf("%8zu %12.4e %12.4e %14.6e %14.6e %14s%s\n", l.n_cells, l.dx, l.dt, l.error_l2,
                l.error_linf,
                l.succ_diff ? std::to_string(*l.succ_diff).c_str() : "-",
                l.stable ? "" : "  unstable");
  }
  if (r.fit) std::printf("slope %.4f (expected %d)\n", r.fit->slope, r.gamma);
  return (unstable && cfg.strict) ? kUnstable : 0;
}

int run_ode_cmd(const RunConfig& cfg) {
  std::vector<StepperSpec> specs;
  if (cfg.stepper == "all") {
    for (const char* t : {"fe1", "rk2", "rk3", "rk4", "ab2", "ab3", "ab4", "be1", "imid", "trap"}) {
      specs.push_back(stepper_by_name(t));
    }
  } else {
    specs.push_back(stepper_by_name(cfg.stepper));
  }
  std::printf("%-6s %8s %8s %14s %14s  %s\n", "method", "slope", "expect", "coefficient",
              "closed form", "status");
  for (const auto& spec : specs) {
    const OdeVerifyReport rep = verify_ode_method(cfg.ode, spec);
    std::printf("%-6s %8.4f %8.1f %14.6e %14s  %s\n", std::string(spec.token()).c_str(), rep.slope,
                rep.expected_slope, rep.coefficient,
                rep.expected_coefficient ? std::to_string(*rep.expected_coefficient).c_str() : "-",
                rep.pass ? "ok" : "MISMATCH");
  }
  return 0;
}

int run_figure_cmd(const RunConfig& cfg) {
  const FigureSummary sum = reproduce_figure(cfg.figure, cfg.out_dir, {cfg.max_cells});
  bool unstable = false;
  for (const auto& r : sum.studies) {
    for (const auto& l : r.levels) unstable |= !l.stable;
    if (r.fit) {
      std::printf("%-40s slope %7.3f  gamma %d\n", study_tag(r).c_str(), r.fit->slope, r.gamma);
    }
  }
  for (const auto& [dt, err] : sum.time_sweep) std::printf("dt %-8g l2 %.6e\n", dt, err);
  for (const auto& f : sum.files) std::printf("wrote %s\n", f.c_str());
  return (unstable && cfg.strict) ? kUnstable : 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  for (const auto& a : args) {
    if (a == "-h" || a == "--help") {
      std::cout << usage_text();
      return 0;
    }
  }
  RunConfig cfg;
  try {
    cfg = parse_config(args);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "hypconv: %s\n", e.what());
    return kUsage;
  }
  try {
    switch (cfg.subcommand) {
      case Subcommand::solve: return run_solve_cmd(cfg);
      case Subcommand::converge: return run_converge_cmd(cfg);
      case Subcommand::ode_verify: return run_ode_cmd(cfg);
      case Subcommand::figure: return run_figure_cmd(cfg);
    }
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "hypconv: %s\n", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "hypconv: %s\n", e.what());
    return kUsage;
  }
  return 0;
}
