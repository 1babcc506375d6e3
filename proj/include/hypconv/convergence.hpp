#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hypconv/fit.hpp"
#include "hypconv/mesh.hpp"
#include "hypconv/problems.hpp"
#include "hypconv/time_steppers.hpp"

namespace hypconv {

enum class SpatialMethod { fd1, fd2, fd3, ppr, ppr_mono };

/// Spatial discretization plus the prognostic variable it advances.
struct SchemeConfig {
  SpatialMethod spatial = SpatialMethod::fd1;
  StateKind prognostic = StateKind::point_values;

  /// fd1 fd2 fd3 -> point values; ppr ppr-mono -> cell averages.
  static SchemeConfig from_token(std::string_view token);
  static SchemeConfig finite_volume(bool monotone, bool cell_integrated = false);

  std::string_view token() const;
  bool is_finite_volume() const { return spatial == SpatialMethod::ppr || spatial == SpatialMethod::ppr_mono; }
  bool monotone() const { return spatial == SpatialMethod::ppr_mono; }
  int fd_order() const;
  /// Formal spatial order of the measured quantity: k for upwind order k; for
  /// the parabolic scheme 4 on cell integrals and 3 on cell averages.
  int nominal_order() const;
};

enum class RefinementMode { space_time, space_only, time_only };
enum class NormKind { l2, linf };

std::string_view to_string(RefinementMode mode);
RefinementMode refinement_mode_by_name(std::string_view name);
std::string_view to_string(NormKind norm);
NormKind norm_by_name(std::string_view name);

/// sqrt(dx * sum e^2).
double l2_norm(std::span<const double> e, double dx);
double linf_norm(std::span<const double> e);

struct SolveResult {
  StateField state;  // final state at time T
  std::vector<double> error;  // numerical minus exact, per point or cell
  double dt = 0.0;
  std::size_t steps = 0;
  double error_l2 = 0.0;
  double error_linf = 0.0;
  bool stable = true;
};

/// Integrates from the exact initial data to T with a fixed step.
///
/// Throws std::invalid_argument when T/dt is not an integer (to 1e-9
/// relative) or when dt * max|dF/du| / dx >= 1. A state that blows up (NaN,
/// Inf, or beyond 1e3 times the initial sup norm) comes back with
/// stable == false instead of throwing; the run stops early in that case.
SolveResult run_solve(const ProblemSpec& prob, const SchemeConfig& scheme,
                      const StepperSpec& stepper, std::size_t n_cells, double dt, double T,
                      BootstrapMode bootstrap = BootstrapMode::exact_solution);

/// T / ceil(T / dt): the largest step not above dt that lands on T.
double snap_time_step(double dt, double T);

/// A refinement ladder. For space_time dt = eta_space * dx at every level;
/// for space_only dt = eta_space * dx_smallest throughout; for time_only the
/// first mesh is used with dt = eta_time * dx / 2^k, k < n_time_levels.
/// Every dt is snapped so that T is an integral number of steps.
struct RefinementPlan {
  RefinementMode mode = RefinementMode::space_time;
  std::vector<std::size_t> n_cells_seq;
  double eta_space = 0.25;
  double eta_time = 0.16;
  int n_time_levels = 6;
  double T_horizon = 0.25;
  /// Startup for Adams-Bashforth history.
  BootstrapMode bootstrap = BootstrapMode::exact_solution;

  struct Level {
    std::size_t n_cells;
    double dt;
  };
  std::vector<Level> levels() const;
};

/// Ladder parameters behind the reference convergence figures, keyed by
/// problem, spatial method, stepper and refinement mode.
RefinementPlan default_plan(ProblemId problem, SpatialMethod spatial, Method stepper,
                            RefinementMode mode);

/// n_lo, 2 n_lo, ..., n_hi.
std::vector<std::size_t> doubling_sequence(std::size_t n_lo, std::size_t n_hi);

/// Values of one solve: point values or cell averages on a mesh.
struct LevelField {
  std::shared_ptr<const UniformMesh> mesh;
  std::vector<double> values;
};

/// Norms of differences between consecutive fields, mapped onto the coarsest
/// mesh first. time_only differences pointwise on the shared mesh. space_only
/// samples nested nodes for point values (non-nested meshes throw) and
/// integrates the parabolic reconstruction for cell averages. Result i is
/// the norm of field[i+1] - field[i].
std::vector<double> successive_differences(std::span<const LevelField> fields,
                                           RefinementMode mode, const SchemeConfig& scheme,
                                           NormKind norm = NormKind::l2);

struct LevelRecord {
  std::size_t n_cells = 0;
  double dx = 0.0;
  double dt = 0.0;
  double error_l2 = 0.0;
  double error_linf = 0.0;
  std::optional<double> succ_diff;  // against the previous (coarser) level
  bool stable = true;
};

struct StudyResult {
  std::string problem;
  std::string scheme;
  std::string stepper;
  RefinementMode mode = RefinementMode::space_time;
  NormKind norm = NormKind::l2;
  std::vector<LevelRecord> levels;
  std::optional<LineFit> fit;
  std::optional<TwoTermFit> two_term;
  int gamma = 0;

  /// Step measure per level: dt for time_only, dx otherwise.
  double xi(std::size_t level) const;
  /// Points that enter the fits: errors (space_time) or successive
  /// differences (space_only, time_only) of stable levels.
  void fit_points(std::vector<double>& xs, std::vector<double>& ys) const;
  /// Least-squares slope through fit points [first, last).
  std::optional<double> slope_between(std::size_t first, std::size_t last) const;
};

StudyResult run_study(const RefinementPlan& plan, const ProblemSpec& prob,
                      const SchemeConfig& scheme, const StepperSpec& stepper,
                      NormKind norm = NormKind::l2);

/// Re-fits slope and two-term coefficients from the level records.
void refit(StudyResult& result);

}  // namespace hypconv
