// Python module: presets, single solves, convergence studies, ODE checks,
// parabolic reconstruction and report output.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hypconv/convergence.hpp"
#include "hypconv/ode_verify.hpp"
#include "hypconv/report.hpp"
#include "hypconv/spatial_ppr.hpp"

namespace py = pybind11;
using namespace hypconv;

namespace {

py::dict level_dict(const LevelRecord& l) {
  py::dict d;
  d["n_cells"] = l.n_cells;
  d["dx"] = l.dx;
  d["dt"] = l.dt;
  d["error_l2"] = l.error_l2;
  d["error_linf"] = l.error_linf;
  d["succ_diff"] = l.succ_diff ? py::cast(*l.succ_diff) : py::none();
  d["stable"] = l.stable;
  return d;
}

py::dict study_dict(const StudyResult& r) {
  py::dict d;
  d["problem"] = r.problem;
  d["scheme"] = r.scheme;
  d["stepper"] = r.stepper;
  d["mode"] = std::string(to_string(r.mode));
  d["norm"] = std::string(to_string(r.norm));
  py::list levels;
  for (const auto& l : r.levels) levels.append(level_dict(l));
  d["levels"] = levels;
  d["slope"] = r.fit ? py::cast(r.fit->slope) : py::none();
  d["intercept"] = r.fit ? py::cast(r.fit->intercept) : py::none();
  d["zeta"] = r.two_term ? py::cast(std::vector<double>{r.two_term->zeta_gamma,
                                                        r.two_term->zeta_gamma_plus_1})
                         : py::none();
  d["gamma"] = r.gamma;
  d["csv"] = format_csv(r);
  return d;
}

// Same options as the converge subcommand, as keyword arguments.
RunConfig config_from(const std::string& command, const py::kwargs& kw) {
  std::vector<std::string> args{command};
  for (const auto& [k, v] : kw) {
    std::string key = py::str(k);
    for (char& c : key) if (c == '_') c = '-';
    if (py::isinstance<py::bool_>(v)) {
      if (v.cast<bool>()) args.push_back("--" + key);
      continue;
    }
    std::string value;
    if (py::isinstance<py::list>(v) || py::isinstance<py::tuple>(v)) {
      for (const auto& item : v) value += (value.empty() ? "" : ",") + std::string(py::str(item));
    } else {
      value = py::str(v);
    }
    args.push_back("--" + key);
    args.push_back(value);
  }
  return parse_config(args);
}

}  // namespace

PYBIND11_MODULE(_hypconv, m) {
  m.doc() = "Method-of-lines convergence studies for 1D hyperbolic balance laws";

  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);

  m.def("exact_solution",
        [](const std::string& problem, double x, double t) {
          return exact_solution(problem_by_name(problem), x, t);
        },
        py::arg("problem"), py::arg("x"), py::arg("t"));
  m.def("source_term",
        [](const std::string& problem, double x, double t) {
          return source_term(problem_by_name(problem), x, t);
        },
        py::arg("problem"), py::arg("x"), py::arg("t"));
  m.def("exact_cell_average",
        [](const std::string& problem, double a, double b, double t) {
          return exact_cell_average(problem_by_name(problem), a, b, t);
        },
        py::arg("problem"), py::arg("a"), py::arg("b"), py::arg("t"));

  m.def("interpolate_edges", [](const std::vector<double>& mean) { return interpolate_edges(mean); },
        py::arg("mean"));
  m.def("reconstruct",
        [](const std::vector<double>& mean, bool monotone) {
          const auto r = reconstruct(mean, monotone);
          return py::make_tuple(r.left, r.right);
        },
        py::arg("mean"), py::arg("monotone") = false,
        "Left and right edge values of every cell's parabola.");

  m.def("solve",
        [](const std::string& problem, const std::string& spatial, const std::string& stepper,
           std::size_t n_cells, double dt, double T, bool cell_integrals) {
          SchemeConfig scheme = SchemeConfig::from_token(spatial);
          if (cell_integrals) scheme.prognostic = StateKind::cell_integrals;
          const SolveResult r = run_solve(problem_by_name(problem), scheme, stepper_by_name(stepper),
                                          n_cells, snap_time_step(dt, T), T);
          py::dict d;
          d["values"] = r.state.data;
          d["error"] = r.error;
          d["dt"] = r.dt;
          d["steps"] = r.steps;
          d["error_l2"] = r.error_l2;
          d["error_linf"] = r.error_linf;
          d["stable"] = r.stable;
          return d;
        },
        py::arg("problem"), py::arg("spatial"), py::arg("stepper"), py::arg("n_cells"),
        py::arg("dt"), py::arg("T"), py::arg("cell_integrals") = false,
        "One run from exact initial data; dt is snapped so that T is reached exactly.");

  m.def("converge",
        [](const py::kwargs& kw) {
          const RunConfig cfg = config_from("converge", kw);
          const StudyResult r =
              run_study(cfg.plan, cfg.problem_spec(), cfg.scheme(), cfg.stepper_spec(), cfg.norm);
          return study_dict(r);
        },
        "Convergence study. Keywords mirror the CLI flags: problem, spatial, stepper, mode,\n"
        "ncells (list or 'lo:hi'), eta_space, eta_time, horizon, norm, prognostic.");

  m.def("default_plan",
        [](const std::string& problem, const std::string& spatial, const std::string& stepper,
           const std::string& mode) {
          const RefinementPlan p =
              default_plan(problem_by_name(problem).id, SchemeConfig::from_token(spatial).spatial,
                           stepper_by_name(stepper).method, refinement_mode_by_name(mode));
          py::dict d;
          d["n_cells"] = p.n_cells_seq;
          d["eta_space"] = p.eta_space;
          d["eta_time"] = p.eta_time;
          d["n_time_levels"] = p.n_time_levels;
          d["horizon"] = p.T_horizon;
          return d;
        },
        py::arg("problem"), py::arg("spatial"), py::arg("stepper"), py::arg("mode") = "space-time");

  m.def("verify_ode",
        [](const std::string& stepper, const std::string& ode) {
          const OdeVerifyReport r = verify_ode_method(ode, stepper_by_name(stepper));
          py::dict d;
          d["slope"] = r.slope;
          d["expected_slope"] = r.expected_slope;
          d["coefficient"] = r.coefficient;
          d["expected_coefficient"] =
              r.expected_coefficient ? py::cast(*r.expected_coefficient) : py::none();
          d["pass"] = r.pass;
          return d;
        },
        py::arg("stepper"), py::arg("ode") = "forced");

  m.def("fit_loglog_slope",
        [](const std::vector<double>& xs, const std::vector<double>& ys) {
          const LineFit f = fit_loglog_slope(xs, ys);
          return py::make_tuple(f.slope, f.intercept);
        },
        py::arg("xs"), py::arg("ys"));
  m.def("fit_two_term",
        [](const std::vector<double>& xs, const std::vector<double>& ys, double gamma) {
          const TwoTermFit f = fit_two_term(xs, ys, gamma);
          return py::make_tuple(f.zeta_gamma, f.zeta_gamma_plus_1, f.residual);
        },
        py::arg("xs"), py::arg("ys"), py::arg("gamma"));

  m.def("reproduce_figure",
        [](const std::string& figure, const std::string& out_dir, std::size_t max_cells) {
          return reproduce_figure(figure, out_dir, {max_cells}).files;
        },
        py::arg("figure"), py::arg("out_dir"), py::arg("max_cells") = 0,
        "Runs a figure's study matrix and returns the written file paths.");
}
