#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hypconv/convergence.hpp"

namespace hypconv {

enum class Subcommand { solve, converge, ode_verify, figure };

std::string_view to_string(Subcommand cmd);

/// Bad flags, unknown presets, conflicting options. The CLI maps this to
/// exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  Subcommand subcommand = Subcommand::converge;
  std::string problem = "linear";
  std::string spatial = "fd1";
  std::string stepper = "fe1";
  RefinementMode mode = RefinementMode::space_time;
  NormKind norm = NormKind::l2;
  bool cell_integrated = false;
  std::string ode = "forced";    // ode-verify preset
  std::string figure;            // figure id for the figure subcommand
  std::string out_dir = ".";
  bool strict = false;
  std::size_t max_cells = 0;     // 0: no cap (figure runs only)
  /// Default ladder for (problem, spatial, stepper, mode) with overrides.
  RefinementPlan plan;
  /// "key=value" for every setting that did not come from the defaults.
  std::vector<std::string> overrides;

  SchemeConfig scheme() const;
  ProblemSpec problem_spec() const;
  StepperSpec stepper_spec() const;
};

/// Parses `args` (without the program name). Command-line flags win over
/// values in the key=value config file (either `config_file` or --config),
/// which win over the default ladders.
///
///   <command> [target] --problem --spatial --stepper --mode --ncells
///   --eta-space --eta-time --horizon --norm --out --strict --config
///   --prognostic {averages,integrals} --ode --max-cells
///
/// --ncells takes a comma list (64,128,256) or a doubling range (64:4096).
/// --eta-time outside time refinement and --eta-space inside it conflict.
/// Throws UsageError.
RunConfig parse_config(const std::vector<std::string>& args,
                       const std::optional<std::string>& config_file = std::nullopt);

/// Help text for --help.
std::string usage_text();

/// Rows per level, then three comment lines: run metadata, the slope fit,
/// the two-term fit. Throws std::runtime_error when the file cannot be
/// written.
void emit_csv(const StudyResult& result, const std::string& path,
              const std::vector<std::string>& metadata = {});
std::string format_csv(const StudyResult& result, const std::vector<std::string>& metadata = {});

struct ParsedCsv {
  StudyResult result;
  std::map<std::string, std::string> metadata;
};
ParsedCsv parse_csv(std::string_view text);
ParsedCsv read_csv(const std::string& path);

struct Series {
  std::string name;
  std::vector<double> xs;
  std::vector<double> ys;
};

/// Log-log plot, one polyline per series, dashed guides of the given slopes
/// anchored at the first point of the first series. Throws
/// std::invalid_argument on an empty series list, an empty series or a
/// non-positive coordinate.
std::string loglog_svg(const std::vector<Series>& series, const std::vector<int>& guide_slopes,
                       const std::string& title = {});
void emit_loglog_svg(const std::vector<Series>& series, const std::vector<int>& guide_slopes,
                     const std::string& path, const std::string& title = {});

/// Linear axes; solution profiles.
std::string profile_svg(const std::vector<Series>& series, const std::string& title = {});
void emit_profile_svg(const std::vector<Series>& series, const std::string& path,
                      const std::string& title = {});

struct FigureOptions {
  /// Drops ladder levels finer than this; 0 keeps the full ladders.
  std::size_t max_cells = 0;
};

struct FigureSummary {
  std::vector<std::string> files;
  std::vector<StudyResult> studies;
  /// fig2 only: (dt, l2 error) in increasing dt.
  std::vector<std::pair<double, double>> time_sweep;
};

/// fig2: constant advection, upwind1 + FE1 on 2^8 cells to T = 1 over a dt
/// sweep, with profiles at dt = 2e-3 and 1e-4. fig4/fig5/fig6: upwind1,
/// parabolic, monotone parabolic; both presets x three refinement modes x
/// seven explicit steppers.
FigureSummary reproduce_figure(const std::string& figure_id, const std::string& out_dir,
                               const FigureOptions& options = {});

/// problem_spatial_stepper_mode, used for output file names.
std::string study_tag(const StudyResult& result);

}  // namespace hypconv
