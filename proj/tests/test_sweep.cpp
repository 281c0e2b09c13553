#include <cmath>
#include <sstream>

#include "doctest.h"
#include "relchan/sweep.hpp"
#include "test_support.hpp"

using namespace relchan;
using relchan::testing::kPi;

namespace {

std::string csv(const SweepTable& t) {
  std::ostringstream os;
  write_csv(os, t);
  return os.str();
}

SweepConfig small(Experiment e) {
  auto c = SweepConfig::defaults_for(e);
  c.alpha_range = SweepRange{0.1, 8.0, 6, true};
  c.theta_range.steps = std::min(c.theta_range.steps, 19);
  c.w1_range = {1.0, 6.0, 6, false};
  return c;
}

}  // namespace

TEST_CASE("parse_angle_or_number") {
  CHECK(parse_angle_or_number("0.25") == 0.25);
  CHECK(parse_angle_or_number(" pi ") == kPi);
  CHECK(parse_angle_or_number("pi/8") == kPi / 8);
  CHECK(parse_angle_or_number("3pi/8") == doctest::Approx(3 * kPi / 8).epsilon(1e-15));
  CHECK(parse_angle_or_number("-pi/4") == -kPi / 4);
  CHECK(std::isinf(parse_angle_or_number("inf")));
  CHECK_THROWS_AS(parse_angle_or_number("pie"), ConfigError);
  CHECK_THROWS_AS(parse_angle_or_number("pi/0"), ConfigError);
  CHECK_THROWS_AS(parse_angle_or_number(""), ConfigError);
  CHECK_THROWS_AS(parse_angle_or_number("1.5x"), ConfigError);

  const auto list = parse_number_list("10, 30,pi/2");
  REQUIRE(list.size() == 3);
  CHECK(list[1] == 30.0);
  CHECK(list[2] == kPi / 2);
  CHECK_THROWS_AS(parse_number_list("1,,2"), ConfigError);
}

TEST_CASE("format_number") {
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(1.0 / 3.0) == "0.333333333");
  CHECK(format_number(HUGE_VAL) == "inf");
  CHECK(format_number(std::nan("")) == "nan");
}

TEST_CASE("experiments by name") {
  for (auto e : {Experiment::fig1, Experiment::fig2, Experiment::fig3, Experiment::fig4, Experiment::fig5,
                 Experiment::custom})
    CHECK(parse_experiment(experiment_name(e)) == e);
  CHECK_FALSE(parse_experiment("fig6").has_value());
}

TEST_CASE("sweep ranges") {
  const auto lin = SweepRange{0.0, 1.0, 5, false}.values();
  CHECK(lin == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  const auto lg = SweepRange{0.1, 10.0, 3, true}.values();
  CHECK(lg[1] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(lg.back() == 10.0);

  const auto grid = SweepConfig::defaults_for(Experiment::fig2).alpha_grid();
  CHECK(grid.size() == 42);
  CHECK(grid.front().raw() == 0.0);
  CHECK(grid.back().is_infinite());
}

TEST_CASE("configuration errors") {
  auto c = SweepConfig::defaults_for(Experiment::fig2);
  CHECK_NOTHROW(c.validate());

  auto bad = c;
  bad.w0 = -1.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = c;
  bad.lambda = 1.5;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = c;
  bad.lambdas = {0.5, 0.5, 0.5, 0.5};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = c;
  bad.alpha_range = SweepRange{2.0, 1.0, 10, false};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = c;
  bad.alpha_range = SweepRange{0.0, 1.0, 10, true};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = c;
  bad.theta_range.steps = 1;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = c;
  bad.k1_values.clear();
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = c;
  bad.spec.rel_tol = 0.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  CHECK_THROWS_AS(run_experiment(bad), ConfigError);
}

TEST_CASE("fig1 rows") {
  const auto t = run_fig1(SweepConfig::defaults_for(Experiment::fig1));
  REQUIRE(t.rows.size() == 181);
  const auto th = t.column("theta");
  const auto c2 = t.column("chi2");
  const auto c4 = t.column("chi4");
  const auto& mid = t.rows[90].values;
  CHECK(mid[th] == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(mid[c2] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mid[c4] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(t.rows[0].values[c2] == 0.0);
  CHECK(std::abs(t.rows[0].values[c4]) < 1e-12);
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto& a = t.rows[i].values;
    const auto& b = t.rows[t.rows.size() - 1 - i].values;
    CHECK(std::abs(a[c2] - b[c2]) < 1e-10);
    CHECK(std::abs(a[c4] - b[c4]) < 1e-10);
  }
  CHECK_THROWS_AS(t.column("nope"), std::out_of_range);
}

TEST_CASE("fig2 at zero rapidity equals fig1 at pi/8") {
  const auto f2 = run_fig2(small(Experiment::fig2));
  auto c1 = SweepConfig::defaults_for(Experiment::fig1);
  c1.theta_range = {0.0, kPi / 4, 3, false};
  const auto f1 = run_fig1(c1);
  const double rest = f1.rows[1].values[f1.column("chi2")];
  const auto& first = f2.rows.front().values;
  CHECK(first[f2.column("alpha")] == 0.0);
  CHECK(std::abs(first[f2.column("chi")] - rest) < 1e-8);
  CHECK(std::isinf(f2.rows.back().values[f2.column("alpha")]));
  CHECK(f2.rows.back().values[f2.column("chi")] > rest);
}

TEST_CASE("multi-curve sweeps keep a fixed row order") {
  auto c = small(Experiment::fig2);
  c.k1_values = {10.0, 50.0};
  const auto t = run_fig2(c);
  REQUIRE(t.rows.size() == 2 * 8);
  CHECK(t.rows[0].values[0] == 10.0);
  CHECK(t.rows[8].values[0] == 50.0);
}

TEST_CASE("output is deterministic across thread counts") {
  for (auto e : {Experiment::fig2, Experiment::fig3, Experiment::fig4, Experiment::fig5, Experiment::custom}) {
    auto c = small(e);
    c.threads = 1;
    const std::string one = csv(run_experiment(c));
    c.threads = 4;
    CHECK(csv(run_experiment(c)) == one);
    CHECK(csv(run_experiment(c)) == one);
  }
}

TEST_CASE("every emitted chi is within its physical range") {
  for (auto e : {Experiment::fig2, Experiment::fig3, Experiment::fig4, Experiment::fig5, Experiment::custom}) {
    const auto t = run_experiment(small(e));
    CHECK_FALSE(t.any_failed());
    for (const auto& name : t.columns) {
      if (name.rfind("chi", 0) != 0 || name == "chi_error") continue;
      const double cap = name.find('4') != std::string::npos ? 2.0 : 1.0;
      const auto col = t.column(name);
      for (const auto& row : t.rows) {
        const double bound = (e == Experiment::fig5 && row.values[0] == 4.0) ? 2.0 : cap;
        CHECK(row.values[col] >= -1e-9);
        CHECK(row.values[col] <= bound + 1e-9);
      }
    }
  }
}

TEST_CASE("fig5 reports crossing angles") {
  const auto t = run_fig5(small(Experiment::fig5));
  int found = 0;
  for (const auto& c : t.comments) {
    if (c.rfind("crossing", 0) != 0) continue;
    ++found;
    CHECK(c.find("vartheta=none") == std::string::npos);
  }
  CHECK(found == 4);
}

TEST_CASE("csv layout") {
  auto c = SweepConfig::defaults_for(Experiment::fig1);
  c.theta_range = {0.0, kPi / 2, 2, false};
  const std::string s = csv(run_fig1(c));
  CHECK(s.rfind("# experiment=fig1\n", 0) == 0);
  CHECK(s.find("\ntheta,chi2,chi4,status\n") != std::string::npos);
  CHECK(s.find("\n1.57079633,1,2,ok\n") != std::string::npos);
}

TEST_CASE("quadrature failures flag rows instead of aborting") {
  auto c = small(Experiment::custom);
  c.spec = {1e-15, 1e-300, 1};
  const auto t = run_experiment(c);
  CHECK(t.any_failed());
  // α = 0 needs no quadrature and still succeeds.
  CHECK_FALSE(t.rows.front().failed);
  CHECK(t.rows.back().failed);
  CHECK(std::isnan(t.rows.back().values[t.column("chi2")]));
  CHECK(csv(t).find(",failed\n") != std::string::npos);
}
