#include <cmath>
#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"
#include "unruh_min/unruh.hpp"

using namespace unruh_min;
using qmat::ComplexMatrix;
using qmat::max_abs_diff;

TEST_CASE("thermal amplitudes", "[unruh]") {
  const auto cold = thermal_amps(UnruhPoint::make(1.0, 0.0));
  CHECK(cold.f0 == 1.0);
  CHECK(cold.f1 == 0.0);

  const auto hot = thermal_amps(UnruhPoint::make(1.0, INFINITY));
  CHECK(hot.f0_sq == 0.5);
  CHECK(hot.f1_sq == 0.5);
  CHECK(hot.f0 == Catch::Approx(1 / std::sqrt(2.0)).epsilon(1e-15));

  // w/T = ln 2: exp(-w/T) = 1/2, so f0^2 = 1/1.5 and f1^2 = 1/3.
  const auto mid = thermal_amps(UnruhPoint::make(1.0, 1.0 / std::log(2.0)));
  CHECK(mid.f0_sq == Catch::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(mid.f1_sq == Catch::Approx(1.0 / 3.0).epsilon(1e-15));

  // Deep in the overflow guard.
  const auto frozen = thermal_amps(UnruhPoint::make(1.0, 1e-6));
  CHECK(frozen.f0 == 1.0);
  CHECK(frozen.f1 == 0.0);

  CHECK_THROWS_AS(UnruhPoint::make(0.0, 1.0), InvalidInput);
  CHECK_THROWS_AS(UnruhPoint::make(1.0, -1.0), InvalidInput);
}

TEST_CASE("f0^2 + f1^2 = 1 across temperatures", "[unruh][property]") {
  for (double lr = -9.0; lr <= 9.0; lr += 0.05) {
    const auto a = thermal_amps(UnruhPoint::make(1.0, std::exp(lr)));
    CHECK(std::abs(a.f0_sq + a.f1_sq - 1.0) <= 1e-15);
    CHECK(std::abs(a.f0 * a.f0 + a.f1 * a.f1 - 1.0) <= 2e-15);
  }
}

TEST_CASE("only w/T enters", "[unruh][property]") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = testing::random_physical(rng);
    const auto u = testing::random_point(rng);
    const auto scaled = UnruhPoint::make(3.7 * u.w(), 3.7 * u.temperature());
    CHECK(closed_form_AI(p, u).max_abs_diff(closed_form_AI(p, scaled)) <= 1e-15);
    CHECK(closed_form_AII(p, u).max_abs_diff(closed_form_AII(p, scaled)) <= 1e-15);
  }
}

TEST_CASE("tripartite state edge cases", "[unruh]") {
  const auto p = XStateParams::make(0.4, -0.3, 0.6);
  const auto rho8 = build_tripartite(p, UnruhPoint::make(1.0, 0.0));
  CHECK(max_abs_diff(reduce_AI(rho8).matrix(), build_x_state(p).matrix()) <= 1e-14);

  constexpr std::array<std::size_t, 3> dims{2, 2, 2};
  constexpr std::array<std::size_t, 1> keep_a{0};
  for (double t : {0.0, 0.1, 1.0, 10.0, double(INFINITY)}) {
    const auto mixed = build_tripartite(XStateParams::make(0, 0, 0), UnruhPoint::make(1.0, t));
    CHECK(max_abs_diff(qmat::partial_trace<2>(mixed.matrix(), dims, keep_a), 0.5 * ComplexMatrix<2>::identity()) <=
          1e-15);
  }
}

TEST_CASE("closed-form reductions agree with the partial-trace pipeline", "[unruh]") {
  // Bell state at w/T = ln 2: the module's central cross-check.
  const auto bell = XStateParams::make(1, -1, 1);
  const auto u = UnruhPoint::make(1.0, 1.0 / std::log(2.0));
  const auto rho8 = build_tripartite(bell, u);
  CHECK(bloch_decompose(reduce_AI(rho8)).max_abs_diff(closed_form_AI(bell, u)) <= 1e-13);
  CHECK(bloch_decompose(reduce_AII(rho8)).max_abs_diff(closed_form_AII(bell, u)) <= 1e-13);

  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = testing::random_physical(rng);
    const auto pt = testing::random_point(rng);
    const auto r8 = build_tripartite(p, pt);
    CHECK(bloch_decompose(reduce_AI(r8)).max_abs_diff(closed_form_AI(p, pt)) <= 1e-12);
    CHECK(bloch_decompose(reduce_AII(r8)).max_abs_diff(closed_form_AII(p, pt)) <= 1e-12);
  }
}

TEST_CASE("closed-form limits", "[unruh]") {
  const auto p = XStateParams::make(1, -0.9, 0.9);
  const auto cold = UnruhPoint::make(1.0, 0.0);
  const auto hot = UnruhPoint::make(1.0, INFINITY);

  CHECK(closed_form_AI(p, cold).max_abs_diff(BlochForm::diagonal({0, 0, 0}, 1, -0.9, 0.9)) == 0.0);
  const double s = 1 / std::sqrt(2.0);
  CHECK(closed_form_AI(p, hot).max_abs_diff(BlochForm::diagonal({0, 0, -0.5}, s, -0.9 * s, 0.45)) <= 4e-16);

  CHECK(closed_form_AII(p, cold).max_abs_diff(BlochForm::diagonal({0, 0, 1}, 0, 0, 0)) == 0.0);
  CHECK(closed_form_AII(p, hot).max_abs_diff(BlochForm::diagonal({0, 0, 0.5}, s, 0.9 * s, -0.45)) <= 4e-16);

  // At T = 0 anti-Rob's mode is in the vacuum: rho_{A,II} = I/2 (x) |0><0|.
  ComplexMatrix<4> expected;
  expected(0, 0) = expected(2, 2) = 0.5;
  CHECK(max_abs_diff(reduce_AII(build_tripartite(p, cold)).matrix(), expected) <= 1e-15);
}

TEST_CASE("A marginals are untouched by the channel", "[unruh][property]") {
  std::mt19937_64 rng(8);
  constexpr std::array<std::size_t, 2> dims{2, 2};
  constexpr std::array<std::size_t, 1> keep_a{0};
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = testing::random_physical(rng);
    const auto r8 = build_tripartite(p, testing::random_point(rng));
    const auto ref = qmat::partial_trace<2>(build_x_state(p).matrix(), dims, keep_a);
    CHECK(max_abs_diff(qmat::partial_trace<2>(reduce_AI(r8).matrix(), dims, keep_a), ref) <= 1e-13);
    CHECK(max_abs_diff(qmat::partial_trace<2>(reduce_AII(r8).matrix(), dims, keep_a), ref) <= 1e-13);
  }
}

TEST_CASE("coefficient magnitudes flow monotonically with temperature", "[unruh][property]") {
  std::mt19937_64 rng(77);
  const auto grid = [] {
    std::vector<double> g;
    for (int i = 0; i < 100; ++i) g.push_back(std::exp(-7.0 + 14.0 * i / 99.0));
    return g;
  }();
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = testing::random_physical(rng);
    BlochForm prev_ai = closed_form_AI(p, UnruhPoint::make(1.0, grid[0]));
    BlochForm prev_aii = closed_form_AII(p, UnruhPoint::make(1.0, grid[0]));
    for (std::size_t k = 1; k < grid.size(); ++k) {
      const auto u = UnruhPoint::make(1.0, grid[k]);
      const auto ai = closed_form_AI(p, u);
      const auto aii = closed_form_AII(p, u);
      for (std::size_t i = 0; i < 3; ++i) {
        CHECK(std::abs(ai.t[i][i]) <= std::abs(prev_ai.t[i][i]));
        CHECK(std::abs(aii.t[i][i]) >= std::abs(prev_aii.t[i][i]));
      }
      CHECK(std::abs(ai.y[2]) >= std::abs(prev_ai.y[2]));     // c0' = -f1^2 grows in size
      CHECK(std::abs(aii.y[2]) <= std::abs(prev_aii.y[2]));   // c0' = f0^2 shrinks
      prev_ai = ai;
      prev_aii = aii;
    }
  }
}
