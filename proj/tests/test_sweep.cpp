#include <algorithm>
#include <cmath>
#include <tuple>
#include <sstream>
#include <string>

#include <catch2/catch_amalgamated.hpp>

#include "curve_shape.hpp"
#include "unruh_min/sweep.hpp"

using namespace unruh_min;

namespace {
std::vector<std::string> data_lines(const std::string& csv) {
  std::vector<std::string> out;
  std::istringstream in(csv);
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      header = true;
      continue;
    }
    out.push_back(line);
  }
  return out;
}

/// N of each row of `side`, in row order.
std::vector<double> n_column(const SweepResult& r, SweepSide side) {
  std::vector<double> n;
  for (const auto& row : r.rows)
    if (row.side == side && row.N) n.push_back(*row.N);
  return n;
}
}  // namespace

TEST_CASE("axis parsing", "[sweep]") {
  CHECK(Axis::parse("0.5").values == std::vector<double>{0.5});
  CHECK(Axis::parse("1,2,3").values == std::vector<double>{1, 2, 3});
  const auto lin = Axis::parse("0:1:5");
  REQUIRE(lin.values.size() == 5);
  CHECK(lin.values[2] == 0.5);
  CHECK(lin.values.back() == 1.0);
  const auto lg = Axis::parse("0.01:100:5", true);
  REQUIRE(lg.values.size() == 5);
  CHECK(lg.values.front() == Catch::Approx(0.01).epsilon(1e-15));
  CHECK(lg.values[2] == Catch::Approx(1.0).epsilon(1e-14));
  CHECK(lg.values.back() == Catch::Approx(100).epsilon(1e-15));
  CHECK(Axis::parse("3:3:1").values == std::vector<double>{3});

  CHECK_THROWS_AS(Axis::parse(""), InvalidInput);
  CHECK_THROWS_AS(Axis::parse("0:1"), InvalidInput);
  CHECK_THROWS_AS(Axis::parse("0:1:0"), InvalidInput);
  CHECK_THROWS_AS(Axis::parse("0:1:2.5"), InvalidInput);
  CHECK_THROWS_AS(Axis::parse("0:1:3", true), InvalidInput);
  CHECK_THROWS_AS(Axis::parse("1,x"), InvalidInput);
}

TEST_CASE("number rendering", "[sweep]") {
  CHECK(format_number(0.45250000000000001) == "0.4525");
  CHECK(format_number(1.04504511594983688) == "1.04504511595");
  CHECK(format_number(INFINITY) == "inf");
  CHECK(format_number(1e-20) == "1e-20");
}

TEST_CASE("sign resolution", "[sweep]") {
  const auto literal = resolve_signs(-0.5, -0.5, -0.5);
  CHECK(literal == XStateParams::coefficients(-0.5, -0.5, -0.5));

  const auto flipped = resolve_signs(1, 0.9, 0.9);
  CHECK(flipped == XStateParams::coefficients(1, -0.9, 0.9));
  CHECK(flipped.is_physical());

  const auto hopeless = resolve_signs(0.9, 0.85, 1);
  CHECK_FALSE(hopeless.is_physical());
  CHECK(hopeless == XStateParams::coefficients(0.9, 0.85, 1));
}

TEST_CASE("sweep output is independent of worker count", "[sweep]") {
  SweepSpec spec;
  spec.c1 = Axis::parse("0:1:4");
  spec.c2 = Axis::parse("-0.5,0.5");
  spec.c3 = Axis::parse("0.2,0.9");
  spec.temperature = Axis::parse("0.05:20:7", true);
  spec.sides = {SweepSide::AII, SweepSide::SUM, SweepSide::AI};
  spec.oracle = true;
  spec.variational.resolution = 256;
  const auto one = to_csv(spec, run_sweep(spec, 1));
  const auto four = to_csv(spec, run_sweep(spec, 4));
  CHECK(one == four);
  CHECK(one == to_csv(spec, run_sweep(spec, 3)));
}

TEST_CASE("sweep rows are ordered and well formed", "[sweep]") {
  SweepSpec spec;
  spec.c1 = Axis::parse("0.6,0.2");
  spec.c2 = Axis::parse("0.5");
  spec.c3 = Axis::parse("0.5,0.3");
  spec.temperature = Axis::parse("10,0.1,1");
  spec.sides = {SweepSide::SUM, SweepSide::AI};
  spec.oracle = true;
  spec.variational.resolution = 256;
  const auto res = run_sweep(spec);
  REQUIRE(res.rows.size() == 2 * 3 * 4);
  CHECK(res.oracle_ok());
  for (std::size_t i = 1; i < res.rows.size(); ++i) {
    const auto& a = res.rows[i - 1];
    const auto& b = res.rows[i];
    CHECK(std::tuple(static_cast<int>(a.side), a.T, a.c1, a.c2, a.c3) <=
          std::tuple(static_cast<int>(b.side), b.T, b.c1, b.c2, b.c3));
  }
  for (const auto& r : res.rows) {
    REQUIRE(r.N);
    CHECK(*r.N >= 0.0);
    if (r.side == SweepSide::AI) {
      REQUIRE(r.D);
      REQUIRE(r.Bmax);
      CHECK(*r.D >= 0.0);
      CHECK(*r.Bmax <= 2 * std::sqrt(2.0) + 1e-12);
      REQUIRE(r.oracle_delta);
      CHECK(*r.oracle_delta <= kMinOracleTol);
    } else {
      CHECK_FALSE(r.D);
      CHECK_FALSE(r.oracle_delta);
    }
  }

  const auto csv = to_csv(spec, res);
  CHECK(csv.find(std::string(kCsvHeader) + "\n") != std::string::npos);
  CHECK(csv.rfind("# ", 0) == 0);
  CHECK(csv.find('\r') == std::string::npos);
  const auto lines = data_lines(csv);
  REQUIRE(lines.size() == res.rows.size());
  for (const auto& l : lines) CHECK(std::count(l.begin(), l.end(), ',') == 12);
}

TEST_CASE("unphysical points are skipped or evaluated formally", "[sweep]") {
  SweepSpec spec;
  spec.c1 = Axis::parse("0.9,0.85");
  spec.c2 = Axis::parse("0.85");
  spec.c3 = Axis::parse("1");
  spec.temperature = Axis::parse("1");
  auto res = run_sweep(spec);
  REQUIRE(res.rows.size() == 2);
  CHECK(res.skipped == 1);
  CHECK(res.rows[1].method == "skipped:unphysical");
  CHECK_FALSE(res.rows[1].N);
  CHECK(res.rows[0].method == "closed_form");  // (0.85, -0.85, 1) is physical

  spec.allow_unphysical = true;
  res = run_sweep(spec);
  CHECK(res.skipped == 0);
  CHECK(res.rows[1].method == "formal");
  CHECK(res.rows[1].regime == "ii_sudden");

  spec.allow_unphysical = false;
  spec.c1 = Axis::parse("0.9");
  CHECK_THROWS_AS(run_sweep(spec), UnphysicalState);
}

TEST_CASE("sweep input validation", "[sweep]") {
  SweepSpec spec;
  spec.sides.clear();
  CHECK_THROWS_AS(run_sweep(spec), InvalidInput);
  spec = SweepSpec{};
  spec.w = 0.0;
  CHECK_THROWS_AS(run_sweep(spec), InvalidInput);
  spec = SweepSpec{};
  spec.temperature = Axis::parse("-1");
  CHECK_THROWS_AS(run_sweep(spec), InvalidInput);
  CHECK_THROWS_AS(preset("fig9"), InvalidInput);
}

TEST_CASE("every preset runs", "[sweep][presets]") {
  for (const auto& name : preset_names()) {
    const auto spec = preset(name);
    const auto res = run_sweep(spec, 2);
    CHECK_FALSE(res.rows.empty());
    CHECK(to_csv(spec, res).find("# preset=" + name + "\n") != std::string::npos);
  }
}

TEST_CASE("preset curve shapes", "[sweep][presets]") {
  SECTION("fig1-red: non-increasing, no sudden change") {
    const auto res = run_sweep(preset("fig1-red"));
    const auto n = n_column(res, SweepSide::AI);
    REQUIRE(n.size() == 201);
    for (std::size_t i = 1; i < n.size(); ++i) CHECK(n[i] <= n[i - 1]);
    for (const auto& r : res.rows) CHECK(r.regime == "i");
  }
  SECTION("fig6-blue: increasing with one kink at T_sc") {
    const auto res = run_sweep(preset("fig6-blue"));
    REQUIRE(res.rows.front().t_sc);
    const double tsc = *res.rows.front().t_sc;
    CHECK(std::abs(tsc - 1.19700093394696064) <= 1e-12);
    const auto n = n_column(res, SweepSide::AII);
    std::vector<double> t;
    for (const auto& r : res.rows) t.push_back(r.T);
    for (std::size_t i = 1; i < n.size(); ++i) CHECK(n[i] >= n[i - 1]);
    const auto kinks = testing::kink_brackets(t, n);
    REQUIRE(kinks.size() == 1);
    CHECK(kinks[0].first < tsc);
    CHECK(tsc < kinks[0].second);
  }
  SECTION("fig1-blue and fig8-yellow: one kink each, at T_sc") {
    for (const char* name : {"fig1-blue", "fig8-yellow"}) {
      const auto res = run_sweep(preset(name));
      std::vector<double> t, n;
      for (const auto& r : res.rows) {
        t.push_back(r.T);
        n.push_back(*r.N);
      }
      const double tsc = *res.rows.front().t_sc;
      const auto kinks = testing::kink_brackets(t, n);
      INFO(name);
      REQUIRE(kinks.size() == 1);
      CHECK(kinks[0].first < tsc);
      CHECK(tsc < kinks[0].second);
    }
    const auto smooth = run_sweep(preset("fig1-red"));
    std::vector<double> t, n;
    for (const auto& r : smooth.rows) {
      t.push_back(r.T);
      n.push_back(*r.N);
    }
    CHECK(testing::kink_brackets(t, n).empty());
  }
  SECTION("fig8-red: constant sum") {
    const auto res = run_sweep(preset("fig8-red"));
    for (const auto& r : res.rows) {
      REQUIRE(r.N);
      CHECK(std::abs(*r.N - 0.4525) <= 1e-12);
      CHECK(r.regime == "a");
    }
  }
  SECTION("fig8-blue: decreasing to a plateau") {
    const auto res = run_sweep(preset("fig8-blue"));
    const double plateau = 0.25 * (0.81 + 0.7225);
    for (std::size_t i = 1; i < res.rows.size(); ++i) CHECK(*res.rows[i].N <= *res.rows[i - 1].N + 1e-15);
    CHECK(std::abs(*res.rows.back().N - plateau) <= 1e-12);
    CHECK(res.rows.front().regime == "b");
  }
  SECTION("fig2/fig7: T_sc column follows the windows") {
    const auto fig2 = run_sweep(preset("fig2"));
    for (const auto& r : fig2.rows) {
      CHECK(r.regime == "ii_sudden");
      REQUIRE(r.t_sc);
    }
    for (std::size_t i = 1; i < fig2.rows.size(); ++i) CHECK(*fig2.rows[i].t_sc < *fig2.rows[i - 1].t_sc);
    const auto fig7 = run_sweep(preset("fig7"));
    for (std::size_t i = 1; i < fig7.rows.size(); ++i) CHECK(*fig7.rows[i].t_sc > *fig7.rows[i - 1].t_sc);
  }
  SECTION("fig4/fig5: Werner grids carry the requested measure pairs") {
    const auto fig4 = run_sweep(preset("fig4"));
    CHECK(fig4.rows.size() == 11 * 101);
    for (const auto& r : fig4.rows) {
      CHECK(r.N);
      CHECK(r.Bmax);
      CHECK_FALSE(r.D);
      CHECK(std::abs(*r.N - *r.Bmax * *r.Bmax / 16) <= 1e-12);
    }
    const auto fig5 = run_sweep(preset("fig5"));
    for (const auto& r : fig5.rows) {
      CHECK(r.D);
      CHECK_FALSE(r.Bmax);
      CHECK(*r.N >= *r.D - 1e-12);
    }
  }
}
