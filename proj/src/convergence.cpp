#include "hypconv/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hypconv/spatial_fd.hpp"
#include "hypconv/spatial_ppr.hpp"

namespace hypconv {

SchemeConfig SchemeConfig::from_token(std::string_view token) {
  if (token == "fd1") return {SpatialMethod::fd1, StateKind::point_values};
  if (token == "fd2") return {SpatialMethod::fd2, StateKind::point_values};
  if (token == "fd3") return {SpatialMethod::fd3, StateKind::point_values};
  if (token == "ppr") return finite_volume(false);
  if (token == "ppr-mono") return finite_volume(true);
  throw std::invalid_argument("unknown spatial scheme '" + std::string(token) + "'");
}

SchemeConfig SchemeConfig::finite_volume(bool monotone, bool cell_integrated) {
  return {monotone ? SpatialMethod::ppr_mono : SpatialMethod::ppr,
          cell_integrated ? StateKind::cell_integrals : StateKind::cell_averages};
}

std::string_view SchemeConfig::token() const {
  switch (spatial) {
    case SpatialMethod::fd1: return "fd1";
    case SpatialMethod::fd2: return "fd2";
    case SpatialMethod::fd3: return "fd3";
    case SpatialMethod::ppr: return "ppr";
    case SpatialMethod::ppr_mono: return "ppr-mono";
  }
  return "?";
}

int SchemeConfig::fd_order() const {
  switch (spatial) {
    case SpatialMethod::fd1: return 1;
    case SpatialMethod::fd2: return 2;
    case SpatialMethod::fd3: return 3;
    default: return 0;
  }
}

int SchemeConfig::nominal_order() const {
  if (!is_finite_volume()) return fd_order();
  return prognostic == StateKind::cell_integrals ? 4 : 3;
}

std::string_view to_string(RefinementMode mode) {
  switch (mode) {
    case RefinementMode::space_time: return "space-time";
    case RefinementMode::space_only: return "space";
    case RefinementMode::time_only: return "time";
  }
  return "?";
}

RefinementMode refinement_mode_by_name(std::string_view name) {
  if (name == "space-time" || name == "space_time") return RefinementMode::space_time;
  if (name == "space" || name == "space-only" || name == "space_only") {
    return RefinementMode::space_only;
  }
  if (name == "time" || name == "time-only" || name == "time_only") {
    return RefinementMode::time_only;
  }
  throw std::invalid_argument("unknown refinement mode '" + std::string(name) + "'");
}

std::string_view to_string(NormKind norm) { return norm == NormKind::l2 ? "l2" : "linf"; }

NormKind norm_by_name(std::string_view name) {
  if (name == "l2") return NormKind::l2;
  if (name == "linf") return NormKind::linf;
  throw std::invalid_argument("unknown norm '" + std::string(name) + "'");
}

double l2_norm(std::span<const double> e, double dx) {
  double s = 0.0;
  for (double v : e) s += v * v;
  return std::sqrt(dx * s);
}

double linf_norm(std::span<const double> e) {
  double m = 0.0;
  for (double v : e) m = std::max(m, std::abs(v));
  return m;
}

namespace {

double norm_of(std::span<const double> e, double dx, NormKind kind) {
  return kind == NormKind::l2 ? l2_norm(e, dx) : linf_norm(e);
}

// Exact discrete state of the chosen kind at time t.
std::vector<double> exact_state(const ProblemSpec& prob, const UniformMesh& mesh, StateKind kind,
                                double t) {
  const std::size_t n = mesh.n_cells();
  std::vector<double> out(n);
  if (kind == StateKind::point_values) {
    const auto x = mesh.nodes();
    for (std::size_t j = 0; j < n; ++j) out[j] = exact_solution(prob, x[j], t);
    return out;
  }
  const auto e = mesh.edges();
  const double scale = kind == StateKind::cell_integrals ? mesh.dx() : 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    out[j] = scale * exact_cell_average(prob, e[j], e[j + 1], t);
  }
  return out;
}

// Runs whose state leaves this multiple of the initial sup norm count as
// blown up even before they overflow.
constexpr double kBlowUpFactor = 1e3;

bool bounded(std::span<const double> v, double limit) {
  return std::all_of(v.begin(), v.end(),
                     [limit](double x) { return std::isfinite(x) && std::abs(x) <= limit; });
}

Tendency make_tendency(const ProblemSpec& prob, const SchemeConfig& scheme,
                       const std::shared_ptr<const UniformMesh>& mesh) {
  if (!scheme.is_finite_volume()) {
    if (scheme.prognostic != StateKind::point_values) {
      throw std::invalid_argument("finite differences advance point values");
    }
    auto op = std::make_shared<FdOperator>(prob, mesh, FdScheme(scheme.fd_order()));
    return [op](std::span<const double> u, double t, std::span<double> out) {
      op->tendency(u, t, out);
    };
  }
  auto op = std::make_shared<FvOperator>(prob, mesh, scheme.monotone());
  if (scheme.prognostic == StateKind::cell_averages) {
    return [op](std::span<const double> u, double t, std::span<double> out) {
      op->tendency(u, t, out);
    };
  }
  if (scheme.prognostic != StateKind::cell_integrals) {
    throw std::invalid_argument("finite volumes advance cell averages or cell integrals");
  }
  // U' = dx * (u_bar)' with u_bar = U / dx.
  auto scratch = std::make_shared<std::vector<double>>(mesh->n_cells());
  const double dx = mesh->dx();
  return [op, scratch, dx](std::span<const double> U, double t, std::span<double> out) {
    for (std::size_t j = 0; j < U.size(); ++j) (*scratch)[j] = U[j] / dx;
    op->tendency(*scratch, t, out);
    for (double& v : out) v *= dx;
  };
}

}  // namespace

SolveResult run_solve(const ProblemSpec& prob, const SchemeConfig& scheme,
                      const StepperSpec& stepper, std::size_t n_cells, double dt, double T,
                      BootstrapMode bootstrap) {
  if (!(dt > 0.0) || !(T > 0.0)) throw std::invalid_argument("dt and T must be positive");
  const double ratio = T / dt;
  const double steps_f = std::round(ratio);
  if (steps_f < 1.0 || std::abs(ratio - steps_f) > 1e-9 * ratio) {
    throw std::invalid_argument("T/dt = " + std::to_string(ratio) + " is not an integer");
  }
  if (!stepper.is_explicit) {
    throw std::invalid_argument("PDE solves use explicit steppers only");
  }
  auto mesh = std::make_shared<const UniformMesh>(build_mesh(n_cells));
  const StateKind kind = scheme.prognostic;

  SolveResult res;
  res.dt = dt;
  res.steps = static_cast<std::size_t>(steps_f);
  res.state.kind = kind;
  res.state.mesh = mesh;
  res.state.data = exact_state(prob, *mesh, kind, 0.0);

  double max_speed = 0.0;
  {
    const auto pts = kind == StateKind::point_values ? mesh->nodes() : mesh->centers();
    const double scale = kind == StateKind::cell_integrals ? mesh->dx() : 1.0;
    for (std::size_t j = 0; j < n_cells; ++j) {
      max_speed = std::max(max_speed, std::abs(prob.flux_speed(res.state.data[j] / scale, pts[j])));
    }
    if (prob.id == ProblemId::linear_variable) {
      max_speed = std::max({max_speed, std::abs(prob.q0), std::abs(prob.q0 + prob.q1)});
    }
  }
  if (dt * max_speed / mesh->dx() >= 1.0) {
    throw std::invalid_argument("Courant number " + std::to_string(dt * max_speed / mesh->dx()) +
                                " is not below 1");
  }

  const Tendency f = make_tendency(prob, scheme, mesh);
  History hist(std::max(1, stepper.history_depth));
  if (stepper.history_depth > 0) {
    hist = bootstrap_history(f, stepper, res.state.data, 0.0, dt, bootstrap,
                             [&](double t) { return exact_state(prob, *mesh, kind, t); });
  }
  ExplicitStepper integrator(stepper, n_cells);
  auto& u = res.state.data;
  const double limit = kBlowUpFactor * std::max(linf_norm(u), 1e-300);
  for (std::size_t s = 0; s < res.steps; ++s) {
    integrator.step(f, u, static_cast<double>(s) * dt, dt, hist);
    if ((s & 63u) == 63u && !bounded(u, limit)) break;
  }
  res.state.time = T;
  res.stable = bounded(u, limit);

  const auto exact = exact_state(prob, *mesh, kind, T);
  res.error.resize(n_cells);
  for (std::size_t j = 0; j < n_cells; ++j) res.error[j] = u[j] - exact[j];
  if (res.stable) {
    res.error_l2 = l2_norm(res.error, mesh->dx());
    res.error_linf = linf_norm(res.error);
  } else {
    res.error_l2 = res.error_linf = std::numeric_limits<double>::infinity();
  }
  return res;
}

double snap_time_step(double dt, double T) {
  if (!(dt > 0.0) || !(T > 0.0)) throw std::invalid_argument("dt and T must be positive");
  const double n = std::ceil(T / dt - 1e-9);
  return T / std::max(1.0, n);
}

std::vector<RefinementPlan::Level> RefinementPlan::levels() const {
  if (n_cells_seq.empty()) throw std::invalid_argument("refinement plan has no meshes");
  std::vector<Level> out;
  switch (mode) {
    case RefinementMode::space_time:
      for (std::size_t n : n_cells_seq) {
        out.push_back({n, snap_time_step(eta_space / static_cast<double>(n), T_horizon)});
      }
      break;
    case RefinementMode::space_only: {
      const std::size_t finest = *std::max_element(n_cells_seq.begin(), n_cells_seq.end());
      const double dt = snap_time_step(eta_space / static_cast<double>(finest), T_horizon);
      for (std::size_t n : n_cells_seq) out.push_back({n, dt});
      break;
    }
    case RefinementMode::time_only: {
      if (n_time_levels < 2) throw std::invalid_argument("time refinement needs >= 2 levels");
      const std::size_t n = n_cells_seq.front();
      const double largest = eta_time / static_cast<double>(n);
      for (int k = 0; k < n_time_levels; ++k) {
        out.push_back({n, snap_time_step(largest / std::ldexp(1.0, k), T_horizon)});
      }
      break;
    }
  }
  return out;
}

std::vector<std::size_t> doubling_sequence(std::size_t n_lo, std::size_t n_hi) {
  if (n_lo == 0 || n_hi < n_lo) throw std::invalid_argument("bad doubling range");
  std::vector<std::size_t> out;
  for (std::size_t n = n_lo; n <= n_hi; n *= 2) out.push_back(n);
  return out;
}

RefinementPlan default_plan(ProblemId problem, SpatialMethod spatial, Method stepper,
                            RefinementMode mode) {
  // All horizons are fractions of the first mode's period, which is 1 for
  // every preset (k = 2 pi, phase speed 1).
  constexpr double kPeriod = 1.0;
  const bool linear = problem != ProblemId::nonlinear;
  const bool ab = stepper == Method::ab2 || stepper == Method::ab3 || stepper == Method::ab4;

  RefinementPlan plan;
  plan.mode = mode;
  plan.n_time_levels = 6;
  // Differences between time levels converge to the semi-discrete solution,
  // whose past is not the manufactured one; exact history would inject an
  // O(dt^2) start-up error there.
  plan.bootstrap = mode == RefinementMode::time_only ? BootstrapMode::rk_startup
                                                     : BootstrapMode::exact_solution;
  plan.eta_time = 0.16;

  switch (spatial) {
    case SpatialMethod::fd1:
    case SpatialMethod::fd2:
    case SpatialMethod::fd3:
      plan.n_cells_seq = mode == RefinementMode::time_only
                             ? std::vector<std::size_t>{linear ? 128u : 64u}
                             : doubling_sequence(64, 4096);
      plan.eta_space = stepper == Method::ab4 ? 0.125 : 0.25;
      plan.eta_time = stepper == Method::rk4 ? 0.32 : 0.16;
      plan.T_horizon = 0.25 * kPeriod;
      break;
    case SpatialMethod::ppr_mono:
      plan.n_cells_seq = mode == RefinementMode::time_only
                             ? std::vector<std::size_t>{linear ? 128u : 64u}
                             : doubling_sequence(64, 4096);
      if (stepper == Method::fe1 || stepper == Method::rk2) {
        plan.eta_space = 0.2;
      } else if (ab) {
        plan.eta_space = 0.15;
      } else {
        plan.eta_space = 0.25;
      }
      plan.T_horizon = 0.25 * kPeriod;
      break;
    case SpatialMethod::ppr:
      plan.n_cells_seq = mode == RefinementMode::time_only ? std::vector<std::size_t>{128u}
                                                           : doubling_sequence(32, 1024);
      if (stepper == Method::fe1) {
        if (mode == RefinementMode::space_only) {
          plan.eta_space = linear ? 0.0125 : 0.1;
        } else {
          plan.eta_space = linear ? 0.15 : 0.2;
        }
      } else if (stepper == Method::rk2) {
        plan.eta_space = 0.2;
      } else if (ab) {
        plan.eta_space = 0.15;
      } else {
        plan.eta_space = 0.25;
      }
      plan.T_horizon = (linear && mode == RefinementMode::space_only && stepper == Method::fe1)
                           ? 0.03125 * kPeriod
                           : 0.125 * kPeriod;
      break;
  }
  return plan;
}

namespace {

// Values of `field` mapped onto `coarse`: nested node samples or integrated
// parabolas turned back into averages.
std::vector<double> restrict_to(const LevelField& field, const UniformMesh& coarse,
                                const SchemeConfig& scheme) {
  const UniformMesh& fine = *field.mesh;
  if (fine.n_cells() == coarse.n_cells()) return field.values;
  if (!scheme.is_finite_volume()) {
    if (fine.n_cells() % coarse.n_cells() != 0) {
      throw std::invalid_argument("point values need nested meshes to restrict");
    }
    const std::size_t r = fine.n_cells() / coarse.n_cells();
    std::vector<double> out(coarse.n_cells());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = field.values[i * r];
    return out;
  }
  std::vector<double> mean = field.values;
  if (scheme.prognostic == StateKind::cell_integrals) {
    for (double& v : mean) v /= fine.dx();
  }
  auto out = integrate_to_coarse(reconstruct(mean, scheme.monotone()), fine, coarse);
  for (double& v : out) v /= coarse.dx();
  return out;
}

}  // namespace

std::vector<double> successive_differences(std::span<const LevelField> fields,
                                           RefinementMode mode, const SchemeConfig& scheme,
                                           NormKind norm) {
  if (fields.size() < 2) throw std::invalid_argument("need at least two levels");
  std::vector<double> out;
  out.reserve(fields.size() - 1);
  if (mode == RefinementMode::time_only) {
    for (std::size_t i = 0; i + 1 < fields.size(); ++i) {
      const auto& a = fields[i];
      const auto& b = fields[i + 1];
      if (a.values.size() != b.values.size()) {
        throw std::invalid_argument("time refinement needs a shared mesh");
      }
      std::vector<double> d(a.values.size());
      for (std::size_t j = 0; j < d.size(); ++j) d[j] = b.values[j] - a.values[j];
      out.push_back(norm_of(d, a.mesh->dx(), norm));
    }
    return out;
  }
  const auto coarsest = std::min_element(fields.begin(), fields.end(), [](const auto& a, const auto& b) {
    return a.mesh->n_cells() < b.mesh->n_cells();
  });
  const UniformMesh& coarse = *coarsest->mesh;
  std::vector<double> prev = restrict_to(fields[0], coarse, scheme);
  for (std::size_t i = 1; i < fields.size(); ++i) {
    std::vector<double> cur = restrict_to(fields[i], coarse, scheme);
    std::vector<double> d(cur.size());
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = cur[j] - prev[j];
    out.push_back(norm_of(d, coarse.dx(), norm));
    prev = std::move(cur);
  }
  return out;
}

double StudyResult::xi(std::size_t level) const {
  return mode == RefinementMode::time_only ? levels[level].dt : levels[level].dx;
}

void StudyResult::fit_points(std::vector<double>& xs, std::vector<double>& ys) const {
  xs.clear();
  ys.clear();
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const auto& l = levels[i];
    if (!l.stable) continue;
    double y = 0.0;
    if (mode == RefinementMode::space_time) {
      y = norm == NormKind::l2 ? l.error_l2 : l.error_linf;
    } else {
      if (!l.succ_diff) continue;
      y = *l.succ_diff;
    }
    if (!(y > 0.0) || !std::isfinite(y)) continue;
    xs.push_back(xi(i));
    ys.push_back(y);
  }
}

std::optional<double> StudyResult::slope_between(std::size_t first, std::size_t last) const {
  std::vector<double> xs, ys;
  fit_points(xs, ys);
  last = std::min(last, xs.size());
  if (last < first + 2) return std::nullopt;
  std::span<const double> sx(xs.data() + first, last - first);
  std::span<const double> sy(ys.data() + first, last - first);
  if (sx.size() == 2) return std::log(sy[1] / sy[0]) / std::log(sx[1] / sx[0]);
  return fit_loglog_slope(sx, sy).slope;
}

void refit(StudyResult& result) {
  std::vector<double> xs, ys;
  result.fit_points(xs, ys);
  result.fit.reset();
  result.two_term.reset();
  if (xs.size() >= 3) result.fit = fit_loglog_slope(xs, ys);
  if (xs.size() >= 2) {
    try {
      result.two_term = fit_two_term(xs, ys, result.gamma);
    } catch (const std::invalid_argument&) {
      result.two_term.reset();
    }
  }
}

StudyResult run_study(const RefinementPlan& plan, const ProblemSpec& prob,
                      const SchemeConfig& scheme, const StepperSpec& stepper, NormKind norm) {
  StudyResult result;
  result.problem = std::string(prob.name());
  result.scheme = std::string(scheme.token());
  result.stepper = std::string(stepper.token());
  result.mode = plan.mode;
  result.norm = norm;

  const int alpha = scheme.nominal_order();
  const int beta = stepper.order;
  switch (plan.mode) {
    case RefinementMode::space_time: result.gamma = std::min(alpha, beta); break;
    case RefinementMode::space_only: result.gamma = alpha; break;
    case RefinementMode::time_only: result.gamma = beta; break;
  }

  const auto levels = plan.levels();
  const std::size_t n_coarsest = levels.front().n_cells;
  auto coarsest = std::make_shared<const UniformMesh>(n_coarsest, Interval{0.0, 1.0});
  std::vector<LevelField> fields;
  fields.reserve(levels.size());

  for (const auto& lv : levels) {
    SolveResult solve = run_solve(prob, scheme, stepper, lv.n_cells, lv.dt, plan.T_horizon, plan.bootstrap);
    LevelRecord rec;
    rec.n_cells = lv.n_cells;
    rec.dx = solve.state.mesh->dx();
    rec.dt = lv.dt;
    rec.stable = solve.stable;
    rec.error_l2 = solve.error_l2;
    rec.error_linf = solve.error_linf;
    if (solve.stable && plan.mode == RefinementMode::space_time && !scheme.is_finite_volume() &&
        lv.n_cells != n_coarsest) {
      // Point-value errors are compared on the coarsest nodes only.
      const auto e = restrict_to({solve.state.mesh, solve.error}, *coarsest, scheme);
      rec.error_l2 = l2_norm(e, coarsest->dx());
      rec.error_linf = linf_norm(e);
    }
    result.levels.push_back(rec);
    fields.push_back({solve.state.mesh, std::move(solve.state.data)});
  }

  if (plan.mode != RefinementMode::space_time && fields.size() >= 2) {
    const auto diffs = successive_differences(fields, plan.mode, scheme, norm);
    for (std::size_t i = 0; i < diffs.size(); ++i) {
      auto& rec = result.levels[i + 1];
      if (rec.stable && result.levels[i].stable && std::isfinite(diffs[i])) rec.succ_diff = diffs[i];
    }
  }
  refit(result);
  return result;
}

}  // namespace hypconv
