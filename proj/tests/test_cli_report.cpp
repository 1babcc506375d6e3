#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hypconv/report.hpp"

using namespace hypconv;
namespace fs = std::filesystem;

namespace {

std::size_t count(const std::string& s, const std::string& what) {
  std::size_t n = 0;
  for (auto p = s.find(what); p != std::string::npos; p = s.find(what, p + 1)) ++n;
  return n;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path scratch(const char* name) {
  const auto d = fs::temp_directory_path() / name;
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

StudyResult small_study() {
  RunConfig cfg = parse_config({"converge", "--ncells", "32:128"});
  return run_study(cfg.plan, cfg.problem_spec(), cfg.scheme(), cfg.stepper_spec());
}

}  // namespace

TEST_CASE("default ladders come through parse_config") {
  const auto fe1 = parse_config({"converge", "--problem", "linear", "--spatial", "fd1", "--stepper",
                                 "fe1", "--mode", "space-time"});
  CHECK(fe1.subcommand == Subcommand::converge);
  CHECK(fe1.plan.eta_space == doctest::Approx(0.25));
  CHECK(fe1.overrides.empty());
  const auto ab4 = parse_config({"converge", "--problem", "linear", "--spatial", "fd1", "--stepper",
                                 "ab4", "--mode", "space-time"});
  CHECK(ab4.plan.eta_space == doctest::Approx(0.125));
}

TEST_CASE("usage errors") {
  CHECK_THROWS_AS(parse_config({"converge", "--spatial", "fd9"}), UsageError);
  CHECK_THROWS_AS(parse_config({"converge", "--problem", "heat"}), UsageError);
  CHECK_THROWS_AS(parse_config({"launch"}), UsageError);
  CHECK_THROWS_AS(parse_config({"converge", "--mode", "time", "--eta-space", "0.1"}), UsageError);
  CHECK_THROWS_AS(parse_config({"converge", "--eta-time", "0.1"}), UsageError);
  CHECK_THROWS_AS(parse_config({"converge", "--stepper", "be1"}), UsageError);
  CHECK_THROWS_AS(parse_config({"converge", "--prognostic", "integrals"}), UsageError);
  CHECK_THROWS_AS(parse_config({"figure"}), UsageError);
  CHECK_THROWS_AS(parse_config({"ode-verify", "--spatial", "fd1"}), UsageError);
  CHECK_THROWS_AS(parse_config({"converge", "--ncells", "2,4"}), UsageError);
}

TEST_CASE("overrides are applied and recorded") {
  const auto c = parse_config({"converge", "--ncells", "64,128,256", "--horizon", "0.5", "--eta-space",
                               "0.1", "--norm", "linf"});
  CHECK(c.plan.n_cells_seq == std::vector<std::size_t>{64, 128, 256});
  CHECK(c.plan.T_horizon == doctest::Approx(0.5));
  CHECK(c.plan.eta_space == doctest::Approx(0.1));
  CHECK(c.norm == NormKind::linf);
  CHECK(c.overrides.size() == 4);
  CHECK(parse_config({"converge", "--ncells", "16:128"}).plan.n_cells_seq.size() == 4);
  CHECK(parse_config({"ode-verify"}).stepper == "all");
  CHECK(parse_config({"figure", "fig5", "--max-cells", "64"}).figure == "fig5");
}

TEST_CASE("config file sits between defaults and flags") {
  const auto dir = scratch("hypconv_cfg_test");
  const auto path = (dir / "run.cfg").string();
  std::ofstream(path) << "stepper=rk3\nhorizon=0.5\n";
  const auto c = parse_config({"converge"}, path);
  CHECK(c.stepper == "rk3");
  CHECK(c.plan.T_horizon == doctest::Approx(0.5));
  CHECK(parse_config({"converge", "--stepper", "rk2"}, path).stepper == "rk2");
  std::ofstream(path) << "colour=blue\n";
  CHECK_THROWS_AS(parse_config({"converge"}, path), UsageError);
  fs::remove_all(dir);
}

TEST_CASE("CSV layout, round trip and determinism") {
  const StudyResult r = small_study();
  const std::string text = format_csv(r, {"horizon=0.25"});
  CHECK(text.rfind("n_cells,dx,dt,error_l2,error_linf,succ_diff,stable\n", 0) == 0);
  CHECK(count(text, "\n") == 1 + 3 + 3);
  CHECK(count(text, "\n#") == 3);
  CHECK(text.find('\r') == std::string::npos);
  CHECK(text.find("# slope=") != std::string::npos);
  CHECK(text.find("gamma=1") != std::string::npos);

  const ParsedCsv back = parse_csv(text);
  REQUIRE(back.result.levels.size() == r.levels.size());
  for (std::size_t i = 0; i < r.levels.size(); ++i) {
    CHECK(back.result.levels[i].n_cells == r.levels[i].n_cells);
    CHECK(back.result.levels[i].dx == r.levels[i].dx);
    CHECK(back.result.levels[i].dt == r.levels[i].dt);
    CHECK(back.result.levels[i].error_l2 == r.levels[i].error_l2);
    CHECK(back.result.levels[i].error_linf == r.levels[i].error_linf);
  }
  REQUIRE(back.result.fit);
  CHECK(back.result.fit->slope == r.fit->slope);
  CHECK(back.metadata.at("horizon") == "0.25");
  CHECK(format_csv(back.result, {"horizon=0.25"}) == text);

  CHECK(format_csv(small_study(), {"horizon=0.25"}) == text);

  const auto dir = scratch("hypconv_csv_test");
  emit_csv(r, (dir / "a.csv").string());
  CHECK(read_csv((dir / "a.csv").string()).result.levels.size() == 3);
  CHECK_THROWS(emit_csv(r, (dir / "missing" / "a.csv").string()));
  fs::remove_all(dir);
}

TEST_CASE("unstable levels are written with a blank difference") {
  StudyResult r = small_study();
  r.levels[1].stable = false;
  r.levels[1].succ_diff = std::nullopt;
  const std::string text = format_csv(r);
  CHECK(text.find(",,false\n") != std::string::npos);
  CHECK_FALSE(parse_csv(text).result.levels[1].stable);
}

TEST_CASE("log-log SVG") {
  Series sq{"square", {0.1, 0.05, 0.025}, {0.01, 0.0025, 0.000625}};
  const std::string one = loglog_svg({sq}, {2});
  CHECK(one.rfind("<svg", 0) == 0);
  CHECK(count(one, "<polyline") >= 1);
  CHECK(count(one, "stroke-dasharray") >= 1);  // guide line and its legend key
  CHECK(one.find("href") == std::string::npos);

  std::vector<Series> seven;
  for (const char* name : {"FE1", "RK2", "RK3", "RK4", "AB2", "AB3", "AB4"}) {
    seven.push_back({name, sq.xs, sq.ys});
  }
  const std::string all = loglog_svg(seven, {1, 2});
  for (const auto& s : seven) CHECK(count(all, ">" + s.name + "<") == 1);

  Series bad{"bad", {0.1, 0.05}, {0.0, 1.0}};
  CHECK_THROWS_AS(loglog_svg({bad}, {}), std::invalid_argument);
  CHECK_THROWS_AS(loglog_svg({}, {}), std::invalid_argument);
  CHECK_THROWS_AS(loglog_svg({Series{"empty", {}, {}}}, {}), std::invalid_argument);
}

TEST_CASE("fig2 writes two profiles and shows error growth as dt shrinks") {
  const auto dir = scratch("hypconv_fig2_test");
  const FigureSummary f = reproduce_figure("fig2", dir.string());
  CHECK(std::count_if(f.files.begin(), f.files.end(),
                      [](const std::string& p) { return p.ends_with(".svg"); }) == 2);
  CHECK(f.time_sweep.front().first == doctest::Approx(1e-4));
  CHECK(f.time_sweep.front().second > f.time_sweep.back().second);
  fs::remove_all(dir);
}

TEST_CASE("capped fig4 has six panels of seven series") {
  const auto dir = scratch("hypconv_fig4_test");
  const FigureSummary f = reproduce_figure("fig4", dir.string(), {128});
  CHECK(f.studies.size() == 42);
  std::size_t svgs = 0;
  for (const auto& p : f.files) {
    if (!p.ends_with(".svg")) continue;
    ++svgs;
    const std::string s = slurp(p);
    for (const char* name : {">FE1<", ">RK4<", ">AB4<"}) CHECK(count(s, name) == 1);
  }
  CHECK(svgs == 6);
  CHECK_THROWS(reproduce_figure("fig9", dir.string()));
  fs::remove_all(dir);
}
