#include "hypconv/report.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace hypconv {

std::string_view to_string(Subcommand cmd) {
  switch (cmd) {
    case Subcommand::solve: return "solve";
    case Subcommand::converge: return "converge";
    case Subcommand::ode_verify: return "ode-verify";
    case Subcommand::figure: return "figure";
  }
  return "?";
}

SchemeConfig RunConfig::scheme() const {
  SchemeConfig s = SchemeConfig::from_token(spatial);
  if (cell_integrated) s.prognostic = StateKind::cell_integrals;
  return s;
}

ProblemSpec RunConfig::problem_spec() const { return problem_by_name(problem); }

StepperSpec RunConfig::stepper_spec() const { return stepper_by_name(stepper); }

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::vector<std::size_t> parse_ncells(const std::string& text) {
  auto to_size = [&](const std::string& s) -> std::size_t {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != s.size() || v < 4) {
      throw UsageError("--ncells: '" + s + "' is not a cell count >= 4");
    }
    return static_cast<std::size_t>(v);
  };
  if (const auto colon = text.find(':'); colon != std::string::npos) {
    const auto lo = to_size(text.substr(0, colon));
    const auto hi = to_size(text.substr(colon + 1));
    if (hi < lo) throw UsageError("--ncells: empty range '" + text + "'");
    return doubling_sequence(lo, hi);
  }
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(to_size(item));
  if (out.empty()) throw UsageError("--ncells: no values");
  return out;
}

const std::vector<std::string> kPresets = {"linear", "nonlinear", "constant-advection"};
const std::vector<std::string> kSpatial = {"fd1", "fd2", "fd3", "ppr", "ppr-mono"};
const std::vector<std::string> kSteppers = {"fe1", "rk2", "rk3", "rk4", "ab2",
                                            "ab3", "ab4", "be1", "imid", "trap"};

struct Cli {
  CLI::App app{"Convergence studies for 1D hyperbolic balance laws", "hypconv"};
  std::string command;
  std::string target;
  std::string problem = "linear", spatial = "fd1", stepper = "fe1", mode = "space-time";
  std::string norm = "l2", ncells, prognostic = "averages", ode = "forced", out = ".";
  double eta_space = 0.0, eta_time = 0.0, horizon = 0.0;
  std::size_t max_cells = 0;
  bool strict = false;
  CLI::Option *o_problem, *o_spatial, *o_stepper, *o_mode, *o_norm, *o_ncells, *o_eta_space,
      *o_eta_time, *o_horizon, *o_prognostic, *o_out;

  Cli() {
    app.add_option("command", command, "solve | converge | ode-verify | figure")
        ->required()
        ->check(CLI::IsMember({"solve", "converge", "ode-verify", "figure"}));
    app.add_option("target", target, "figure id: fig2 fig4 fig5 fig6")
        ->check(CLI::IsMember({"fig2", "fig4", "fig5", "fig6"}));
    o_problem = app.add_option("--problem", problem, "linear | nonlinear | constant-advection")
                    ->check(CLI::IsMember(kPresets));
    o_spatial = app.add_option("--spatial", spatial, "fd1 | fd2 | fd3 | ppr | ppr-mono")
                    ->check(CLI::IsMember(kSpatial));
    std::vector<std::string> stepper_tokens = kSteppers;
    stepper_tokens.push_back("all");
    o_stepper = app.add_option("--stepper", stepper, "fe1 rk2 rk3 rk4 ab2 ab3 ab4 (be1 imid trap, "
                                                     "all: ode-verify only)")
                    ->check(CLI::IsMember(stepper_tokens));
    o_mode = app.add_option("--mode", mode, "space-time | space | time")
                 ->check(CLI::IsMember({"space-time", "space", "time"}));
    o_ncells = app.add_option("--ncells", ncells, "cell counts: 64,128,256 or 64:4096");
    o_eta_space = app.add_option("--eta-space", eta_space, "dt / dx ratio for space refinement")
                      ->check(CLI::PositiveNumber);
    o_eta_time = app.add_option("--eta-time", eta_time, "largest dt / dx for time refinement")
                     ->check(CLI::PositiveNumber);
    o_horizon = app.add_option("--horizon", horizon, "final time T")->check(CLI::PositiveNumber);
    o_norm = app.add_option("--norm", norm, "l2 | linf")->check(CLI::IsMember({"l2", "linf"}));
    o_prognostic = app.add_option("--prognostic", prognostic, "averages | integrals")
                       ->check(CLI::IsMember({"averages", "integrals"}));
    app.add_option("--ode", ode, "decay | forced | constant")
        ->check(CLI::IsMember({"decay", "forced", "constant"}));
    o_out = app.add_option("--out", out, "output directory");
    app.add_option("--max-cells", max_cells, "cap on ladder resolution for figure runs");
    app.add_flag("--strict", strict, "exit 2 when a level goes unstable");
    app.set_config("--config", "", "flat key=value file");
    app.allow_config_extras(CLI::config_extras_mode::error);
  }
};

}  // namespace

std::string usage_text() {
  Cli cli;
  return cli.app.help();
}

RunConfig parse_config(const std::vector<std::string>& args,
                       const std::optional<std::string>& config_file) {
  Cli cli;
  if (config_file) cli.app.set_config("--config", *config_file, "flat key=value file", true);
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    cli.app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  RunConfig cfg;
  if (cli.command == "solve") cfg.subcommand = Subcommand::solve;
  if (cli.command == "converge") cfg.subcommand = Subcommand::converge;
  if (cli.command == "ode-verify") cfg.subcommand = Subcommand::ode_verify;
  if (cli.command == "figure") cfg.subcommand = Subcommand::figure;
  cfg.problem = cli.problem;
  cfg.spatial = cli.spatial;
  cfg.stepper = cli.stepper;
  cfg.mode = refinement_mode_by_name(cli.mode);
  cfg.norm = norm_by_name(cli.norm);
  cfg.cell_integrated = cli.prognostic == "integrals";
  cfg.ode = cli.ode;
  cfg.figure = cli.target;
  cfg.out_dir = cli.out;
  cfg.strict = cli.strict;
  cfg.max_cells = cli.max_cells;

  if (cfg.subcommand == Subcommand::figure && cfg.figure.empty()) {
    throw UsageError("figure needs an id: fig2, fig4, fig5 or fig6");
  }
  if (cfg.subcommand != Subcommand::figure && !cfg.figure.empty()) {
    throw UsageError("unexpected argument '" + cfg.figure + "'");
  }
  if (cfg.subcommand == Subcommand::ode_verify) {
    if (cli.o_spatial->count() || cli.o_ncells->count() || cli.o_eta_space->count() ||
        cli.o_eta_time->count()) {
      throw UsageError("ode-verify takes no spatial or ladder options");
    }
    if (!cli.o_stepper->count()) cfg.stepper = "all";
    return cfg;
  }
  if (cfg.stepper == "all") throw UsageError("--stepper all is only valid for ode-verify");
  const StepperSpec spec = stepper_by_name(cfg.stepper);
  if (!spec.is_explicit) {
    throw UsageError("PDE runs need an explicit stepper, got '" + cfg.stepper + "'");
  }
  if (cfg.mode == RefinementMode::time_only && cli.o_eta_space->count()) {
    throw UsageError("--eta-space conflicts with --mode time (use --eta-time)");
  }
  if (cfg.mode != RefinementMode::time_only && cli.o_eta_time->count()) {
    throw UsageError("--eta-time only applies to --mode time");
  }
  if (cfg.cell_integrated && cfg.spatial.rfind("ppr", 0) != 0) {
    throw UsageError("--prognostic integrals needs a finite-volume scheme");
  }

  const ProblemSpec prob = problem_by_name(cfg.problem);
  const SchemeConfig scheme = cfg.scheme();
  cfg.plan = default_plan(prob.id, scheme.spatial, spec.method, cfg.mode);
  auto record = [&](const char* key, const std::string& value) {
    cfg.overrides.push_back(std::string(key) + "=" + value);
  };
  if (cli.o_ncells->count()) {
    cfg.plan.n_cells_seq = parse_ncells(cli.ncells);
    record("ncells", cli.ncells);
  }
  if (cli.o_eta_space->count()) {
    cfg.plan.eta_space = cli.eta_space;
    record("eta-space", short_num(cli.eta_space));
  }
  if (cli.o_eta_time->count()) {
    cfg.plan.eta_time = cli.eta_time;
    record("eta-time", short_num(cli.eta_time));
  }
  if (cli.o_horizon->count()) {
    cfg.plan.T_horizon = cli.horizon;
    record("horizon", short_num(cli.horizon));
  }
  if (cli.o_norm->count()) record("norm", cli.norm);
  if (cli.o_prognostic->count()) record("prognostic", cli.prognostic);
  return cfg;
}

// ---------------------------------------------------------------- CSV

std::string format_csv(const StudyResult& r, const std::vector<std::string>& metadata) {
  std::string out = "n_cells,dx,dt,error_l2,error_linf,succ_diff,stable\n";
  for (const auto& l : r.levels) {
    out += std::to_string(l.n_cells) + "," + num(l.dx) + "," + num(l.dt) + "," +
           num(l.error_l2) + "," + num(l.error_linf) + "," +
           (l.succ_diff ? num(*l.succ_diff) : std::string()) + "," +
           (l.stable ? "true" : "false") + "\n";
  }
  out += "# problem=" + r.problem + " scheme=" + r.scheme + " stepper=" + r.stepper +
         " mode=" + std::string(to_string(r.mode)) + " norm=" + std::string(to_string(r.norm));
  for (const auto& m : metadata) out += " " + m;
  out += "\n# slope=" + (r.fit ? num(r.fit->slope) : std::string()) +
         " intercept=" + (r.fit ? num(r.fit->intercept) : std::string()) + "\n";
  out += "# zeta_g=" + (r.two_term ? num(r.two_term->zeta_gamma) : std::string()) +
         " zeta_g1=" + (r.two_term ? num(r.two_term->zeta_gamma_plus_1) : std::string()) +
         " gamma=" + std::to_string(r.gamma) + "\n";
  return out;
}

void emit_csv(const StudyResult& result, const std::string& path,
              const std::vector<std::string>& metadata) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << format_csv(result, metadata);
  if (!f) throw std::runtime_error("write failed for '" + path + "'");
}

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(const std::string& s) {
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("bad number '" + s + "'");
  return v;
}

}  // namespace

ParsedCsv parse_csv(std::string_view text) {
  ParsedCsv out;
  auto lines = split(text, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty() || lines[0] != "n_cells,dx,dt,error_l2,error_linf,succ_diff,stable") {
    throw std::invalid_argument("missing CSV header");
  }
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& line = lines[i];
    if (line.rfind("# ", 0) == 0) {
      for (const auto& kv : split(std::string_view(line).substr(2), ' ')) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) continue;
        out.metadata[kv.substr(0, eq)] = kv.substr(eq + 1);
      }
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 7) throw std::invalid_argument("bad CSV row '" + line + "'");
    LevelRecord l;
    l.n_cells = static_cast<std::size_t>(std::stoull(f[0]));
    l.dx = parse_double(f[1]);
    l.dt = parse_double(f[2]);
    l.error_l2 = parse_double(f[3]);
    l.error_linf = parse_double(f[4]);
    if (!f[5].empty()) l.succ_diff = parse_double(f[5]);
    if (f[6] != "true" && f[6] != "false") throw std::invalid_argument("bad stable flag");
    l.stable = f[6] == "true";
    out.result.levels.push_back(l);
  }
  auto& m = out.metadata;
  auto& r = out.result;
  r.problem = m["problem"];
  r.scheme = m["scheme"];
  r.stepper = m["stepper"];
  if (!m["mode"].empty()) r.mode = refinement_mode_by_name(m["mode"]);
  if (!m["norm"].empty()) r.norm = norm_by_name(m["norm"]);
  if (!m["slope"].empty()) r.fit = LineFit{parse_double(m["slope"]), parse_double(m["intercept"])};
  if (!m["gamma"].empty()) r.gamma = std::stoi(m["gamma"]);
  if (!m["zeta_g"].empty()) {
    TwoTermFit t;
    t.zeta_gamma = parse_double(m["zeta_g"]);
    t.zeta_gamma_plus_1 = parse_double(m["zeta_g1"]);
    t.gamma = r.gamma;
    r.two_term = t;
  }
  return out;
}

ParsedCsv read_csv(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_csv(ss.str());
}

// ---------------------------------------------------------------- SVG

namespace {

constexpr double kWidth = 640, kHeight = 480;
constexpr double kLeft = 80, kRight = 150, kTop = 40, kBottom = 60;
const char* const kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string upper(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

struct Frame {
  double x0, x1, y0, y1;  // data range, already in plot units (log10 or linear)
  double sx(double x) const { return kLeft + (x - x0) / (x1 - x0) * (kWidth - kLeft - kRight); }
  double sy(double y) const { return kHeight - kBottom - (y - y0) / (y1 - y0) * (kHeight - kTop - kBottom); }
};

std::string open_svg(const std::string& title) {
  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + px(kWidth) +
                  "\" height=\"" + px(kHeight) + "\" viewBox=\"0 0 " + px(kWidth) + " " +
                  px(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty()) {
    s += "<text x=\"" + px(kWidth / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" +
         escape(title) + "</text>\n";
  }
  return s;
}

std::string axes() {
  return "<rect x=\"" + px(kLeft) + "\" y=\"" + px(kTop) + "\" width=\"" +
         px(kWidth - kLeft - kRight) + "\" height=\"" + px(kHeight - kTop - kBottom) +
         "\" fill=\"none\" stroke=\"black\"/>\n";
}

std::string polyline(const std::vector<std::pair<double, double>>& pts, const char* color,
                     const char* extra = "") {
  std::string s = "<polyline fill=\"none\" stroke=\"" + std::string(color) +
                  "\" stroke-width=\"1.5\"" + extra + " points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) s += ' ';
    s += px(pts[i].first) + "," + px(pts[i].second);
  }
  return s + "\"/>\n";
}

std::string legend(const std::vector<std::string>& names, const std::vector<std::string>& colors,
                   const std::vector<bool>& dashed) {
  std::string s = "<g class=\"legend\">\n";
  const double x = kWidth - kRight + 12;
  for (std::size_t i = 0; i < names.size(); ++i) {
    const double y = kTop + 12 + 18.0 * static_cast<double>(i);
    s += "<line x1=\"" + px(x) + "\" y1=\"" + px(y) + "\" x2=\"" + px(x + 24) + "\" y2=\"" +
         px(y) + "\" stroke=\"" + colors[i] + "\" stroke-width=\"1.5\"" +
         (dashed[i] ? " stroke-dasharray=\"5,4\"" : "") + "/>\n";
    s += "<text x=\"" + px(x + 30) + "\" y=\"" + px(y + 4) + "\">" + escape(names[i]) + "</text>\n";
  }
  return s + "</g>\n";
}

void check_series(const std::vector<Series>& series, bool positive) {
  if (series.empty()) throw std::invalid_argument("no series to plot");
  for (const auto& s : series) {
    if (s.xs.empty() || s.xs.size() != s.ys.size()) {
      throw std::invalid_argument("series '" + s.name + "' is empty or ragged");
    }
    for (std::size_t i = 0; i < s.xs.size(); ++i) {
      if (!std::isfinite(s.xs[i]) || !std::isfinite(s.ys[i])) {
        throw std::invalid_argument("series '" + s.name + "' has a non-finite value");
      }
      if (positive && (s.xs[i] <= 0.0 || s.ys[i] <= 0.0)) {
        throw std::invalid_argument("series '" + s.name + "' has a non-positive value");
      }
    }
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << text;
}

}  // namespace

std::string loglog_svg(const std::vector<Series>& series, const std::vector<int>& guide_slopes,
                       const std::string& title) {
  check_series(series, true);
  double lx0 = 1e300, lx1 = -1e300, ly0 = 1e300, ly1 = -1e300;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.xs.size(); ++i) {
      lx0 = std::min(lx0, std::log10(s.xs[i]));
      lx1 = std::max(lx1, std::log10(s.xs[i]));
      ly0 = std::min(ly0, std::log10(s.ys[i]));
      ly1 = std::max(ly1, std::log10(s.ys[i]));
    }
  }
  // Whole decades, at least one wide.
  Frame f{std::floor(lx0), std::ceil(lx1), std::floor(ly0), std::ceil(ly1)};
  if (f.x1 <= f.x0) f.x1 = f.x0 + 1;
  if (f.y1 <= f.y0) f.y1 = f.y0 + 1;

  std::string s = open_svg(title);
  s += axes();
  for (double d = f.x0; d <= f.x1 + 1e-9; d += 1) {
    s += "<text x=\"" + px(f.sx(d)) + "\" y=\"" + px(kHeight - kBottom + 18) +
         "\" text-anchor=\"middle\">1e" + std::to_string(static_cast<int>(d)) + "</text>\n";
  }
  const double ystep = std::max(1.0, std::ceil((f.y1 - f.y0) / 10));
  for (double d = f.y0; d <= f.y1 + 1e-9; d += ystep) {
    s += "<line x1=\"" + px(kLeft) + "\" y1=\"" + px(f.sy(d)) + "\" x2=\"" +
         px(kWidth - kRight) + "\" y2=\"" + px(f.sy(d)) + "\" stroke=\"#ddd\"/>\n";
    s += "<text x=\"" + px(kLeft - 6) + "\" y=\"" + px(f.sy(d) + 4) +
         "\" text-anchor=\"end\">1e" + std::to_string(static_cast<int>(d)) + "</text>\n";
  }

  std::vector<std::string> names, colors;
  std::vector<bool> dashed;
  // Guides first so the data draws on top. Each guide spans the x range of
  // the first series from its first point.
  const auto& first = series.front();
  const double ax = std::log10(first.xs.front()), ay = std::log10(first.ys.front());
  double bx = ax;
  for (double x : first.xs) {
    if (std::abs(std::log10(x) - ax) > std::abs(bx - ax)) bx = std::log10(x);
  }
  if (bx == ax) bx = ax - 1;
  for (std::size_t g = 0; g < guide_slopes.size(); ++g) {
    const double k = guide_slopes[g];
    s += "<line class=\"guide\" x1=\"" + px(f.sx(ax)) + "\" y1=\"" + px(f.sy(ay)) + "\" x2=\"" +
         px(f.sx(bx)) + "\" y2=\"" + px(f.sy(ay + k * (bx - ax))) +
         "\" stroke=\"black\" stroke-opacity=\"0.6\" stroke-dasharray=\"5,4\"/>\n";
    names.push_back("slope " + std::to_string(guide_slopes[g]));
    colors.push_back("black");
    dashed.push_back(true);
  }
  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = kPalette[i % std::size(kPalette)];
    std::vector<std::pair<double, double>> pts;
    for (std::size_t j = 0; j < series[i].xs.size(); ++j) {
      pts.emplace_back(f.sx(std::log10(series[i].xs[j])), f.sy(std::log10(series[i].ys[j])));
    }
    s += "<g class=\"series\">\n" + polyline(pts, color);
    for (const auto& [x, y] : pts) {
      s += "<circle cx=\"" + px(x) + "\" cy=\"" + px(y) + "\" r=\"2.5\" fill=\"" + color + "\"/>\n";
    }
    s += "</g>\n";
    names.insert(names.begin() + static_cast<std::ptrdiff_t>(i), series[i].name);
    colors.insert(colors.begin() + static_cast<std::ptrdiff_t>(i), color);
    dashed.insert(dashed.begin() + static_cast<std::ptrdiff_t>(i), false);
  }
  s += legend(names, colors, dashed);
  return s + "</svg>\n";
}

void emit_loglog_svg(const std::vector<Series>& series, const std::vector<int>& guide_slopes,
                     const std::string& path, const std::string& title) {
  write_text(path, loglog_svg(series, guide_slopes, title));
}

std::string profile_svg(const std::vector<Series>& series, const std::string& title) {
  check_series(series, false);
  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.xs.size(); ++i) {
      x0 = std::min(x0, s.xs[i]);
      x1 = std::max(x1, s.xs[i]);
      y0 = std::min(y0, s.ys[i]);
      y1 = std::max(y1, s.ys[i]);
    }
  }
  if (x1 <= x0) x1 = x0 + 1;
  const double pad = 0.05 * std::max(y1 - y0, 1e-12);
  Frame f{x0, x1, y0 - pad, y1 + pad};

  std::string s = open_svg(title);
  s += axes();
  for (int i = 0; i <= 4; ++i) {
    const double x = x0 + (x1 - x0) * i / 4.0;
    const double y = f.y0 + (f.y1 - f.y0) * i / 4.0;
    s += "<text x=\"" + px(f.sx(x)) + "\" y=\"" + px(kHeight - kBottom + 18) +
         "\" text-anchor=\"middle\">" + short_num(x) + "</text>\n";
    s += "<text x=\"" + px(kLeft - 6) + "\" y=\"" + px(f.sy(y) + 4) + "\" text-anchor=\"end\">" +
         short_num(y) + "</text>\n";
  }
  std::vector<std::string> names, colors;
  std::vector<bool> dashed;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = kPalette[i % std::size(kPalette)];
    std::vector<std::pair<double, double>> pts;
    for (std::size_t j = 0; j < series[i].xs.size(); ++j) {
      pts.emplace_back(f.sx(series[i].xs[j]), f.sy(series[i].ys[j]));
    }
    s += polyline(pts, color, i == 0 ? "" : " stroke-dasharray=\"6,3\"");
    names.push_back(series[i].name);
    colors.push_back(color);
    dashed.push_back(i != 0);
  }
  s += legend(names, colors, dashed);
  return s + "</svg>\n";
}

void emit_profile_svg(const std::vector<Series>& series, const std::string& path,
                      const std::string& title) {
  write_text(path, profile_svg(series, title));
}

// ---------------------------------------------------------------- figures

std::string study_tag(const StudyResult& r) {
  std::string mode(to_string(r.mode));
  return r.problem + "_" + r.scheme + "_" + r.stepper + "_" + mode;
}

namespace {

FigureSummary figure2(const std::filesystem::path& dir) {
  FigureSummary out;
  const ProblemSpec prob = constant_advection_preset();
  const SchemeConfig scheme = SchemeConfig::from_token("fd1");
  const StepperSpec fe1 = stepper_spec(Method::fe1);
  const std::size_t n = 256;
  const double T = 1.0;
  // The profile pair plus intermediate steps up to Courant 0.64.
  const std::vector<double> dts = {1e-4, 2e-4, 5e-4, 1e-3, 2e-3, 2.5e-3};

  std::string csv = "dt,courant,error_l2,error_linf\n";
  for (double dt : dts) {
    const SolveResult r = run_solve(prob, scheme, fe1, n, dt, T);
    out.time_sweep.emplace_back(dt, r.error_l2);
    csv += num(dt) + "," + num(dt * n) + "," + num(r.error_l2) + "," + num(r.error_linf) + "\n";
    if (dt == 2e-3 || dt == 1e-4) {
      Series numerical{"dt=" + short_num(dt), {}, {}};
      Series exact{"exact", {}, {}};
      const auto x = r.state.mesh->nodes();
      for (std::size_t j = 0; j < n; ++j) {
        numerical.xs.push_back(x[j]);
        numerical.ys.push_back(r.state.data[j]);
      }
      for (int i = 0; i <= 400; ++i) {
        const double xi = i / 400.0;
        exact.xs.push_back(xi);
        exact.ys.push_back(exact_solution(prob, xi, T));
      }
      const auto path = (dir / ("fig2_dt" + short_num(dt) + ".svg")).string();
      emit_profile_svg({numerical, exact}, path,
                       "upwind1 + FE1, dx = 1/256, T = 1, dt = " + short_num(dt) +
                           ", l2 error " + short_num(r.error_l2));
      out.files.push_back(path);
    }
  }
  const auto csv_path = (dir / "fig2_errors.csv").string();
  write_text(csv_path, csv);
  out.files.push_back(csv_path);
  return out;
}

std::vector<int> guides_for(const std::vector<StudyResult>& studies) {
  std::set<int> g;
  for (const auto& s : studies) g.insert(s.gamma);
  return {g.begin(), g.end()};
}

FigureSummary convergence_figure(const std::string& id, const std::string& spatial,
                                 const std::filesystem::path& dir, const FigureOptions& opt) {
  FigureSummary out;
  const SchemeConfig scheme = SchemeConfig::from_token(spatial);
  for (const char* pname : {"linear", "nonlinear"}) {
    const ProblemSpec prob = problem_by_name(pname);
    for (RefinementMode mode :
         {RefinementMode::space_time, RefinementMode::space_only, RefinementMode::time_only}) {
      std::vector<StudyResult> panel;
      std::vector<Series> series;
      for (const StepperSpec& st : explicit_steppers()) {
        RefinementPlan plan = default_plan(prob.id, scheme.spatial, st.method, mode);
        if (opt.max_cells > 0) {
          auto& seq = plan.n_cells_seq;
          seq.erase(std::remove_if(seq.begin(), seq.end(),
                                   [&](std::size_t n) { return n > opt.max_cells; }),
                    seq.end());
          if (seq.empty()) seq.push_back(opt.max_cells);
        }
        StudyResult r = run_study(plan, prob, scheme, st);
        const auto path = (dir / (id + "_" + study_tag(r) + ".csv")).string();
        emit_csv(r, path, {"horizon=" + short_num(plan.T_horizon)});
        out.files.push_back(path);
        Series s{upper(std::string(st.token())), {}, {}};
        r.fit_points(s.xs, s.ys);
        if (!s.xs.empty()) series.push_back(std::move(s));
        panel.push_back(r);
      }
      if (!series.empty()) {
        const auto path =
            (dir / (id + "_" + pname + "_" + std::string(to_string(mode)) + ".svg")).string();
        emit_loglog_svg(series, guides_for(panel),
                        path, std::string(pname) + ", " + spatial + ", " +
                                  std::string(to_string(mode)) + " refinement");
        out.files.push_back(path);
      }
      out.studies.insert(out.studies.end(), panel.begin(), panel.end());
    }
  }
  return out;
}

}  // namespace

FigureSummary reproduce_figure(const std::string& figure_id, const std::string& out_dir,
                               const FigureOptions& options) {
  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  if (figure_id == "fig2") return figure2(dir);
  if (figure_id == "fig4") return convergence_figure(figure_id, "fd1", dir, options);
  if (figure_id == "fig5") return convergence_figure(figure_id, "ppr", dir, options);
  if (figure_id == "fig6") return convergence_figure(figure_id, "ppr-mono", dir, options);
  throw std::invalid_argument("unknown figure '" + figure_id + "'");
}

}  // namespace hypconv
