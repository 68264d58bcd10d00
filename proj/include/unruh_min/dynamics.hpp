// dynamics.hpp
// Temperature dependence of the MIN under the Unruh channel: regime
// classification, sudden-change temperatures (closed form and bisection),
// the T -> inf asymptote, and the three behaviours of N_AI + N_AII.
//
// With m = min(|c1|, |c2|), the sudden change is the temperature at which
// the c3 term of the MIN formula stops (or starts) being the minimum:
//
//   A-I : T_sc = -w / ln(c3^2/m^2 - 1),   sudden iff |c3| > m > |c3|/sqrt 2
//   A-II: T_sc =  w / ln(c3^2/m^2 - 1),   sudden iff 0 < m < |c3|/sqrt 2
//
// On the boundary m = |c3|/sqrt 2 the logarithm vanishes and the crossing
// moves to T = inf; it is reported as ii_smooth with `boundary` set.

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "unruh_min/correlations.hpp"
#include "unruh_min/errors.hpp"
#include "unruh_min/states.hpp"
#include "unruh_min/unruh.hpp"

namespace unruh_min {

enum class RegimeCase { I, IISudden, IISmooth, III };

inline const char* to_string(RegimeCase c) {
  switch (c) {
    case RegimeCase::I: return "i";
    case RegimeCase::IISudden: return "ii_sudden";
    case RegimeCase::IISmooth: return "ii_smooth";
    case RegimeCase::III: return "iii";
  }
  return "?";
}

struct RegimeLabel {
  Side side;
  RegimeCase regime;
  std::optional<double> t_sc;  // set iff regime == IISudden and a frequency was supplied
  bool boundary = false;       // m == |c3|/sqrt 2

  std::string name() const { return std::string(to_string(regime)) + (boundary ? "_boundary" : ""); }
};

namespace detail {

inline constexpr double kBoundaryRelTol = 1e-12;

struct Magnitudes {
  double m;   // min(|c1|, |c2|)
  double c3;  // |c3|
};

inline Magnitudes magnitudes(const XStateParams& p) {
  return {std::min(std::abs(p.c1()), std::abs(p.c2())), std::abs(p.c3())};
}

// Sign of 2 m^2 - c3^2, with |.| <= tol * c3^2 treated as zero.
inline int boundary_side(const Magnitudes& g) {
  const double lhs = 2.0 * g.m * g.m, rhs = g.c3 * g.c3;
  if (std::abs(lhs - rhs) <= kBoundaryRelTol * rhs) return 0;
  return lhs > rhs ? 1 : -1;
}

inline double log_ratio(const Magnitudes& g) { return std::log(g.c3 * g.c3 / (g.m * g.m) - 1.0); }

}  // namespace detail

/// Regime of N(T) for one side. Temperature-free: t_sc is left empty.
inline RegimeLabel classify(const XStateParams& p, Side side) {
  const auto g = detail::magnitudes(p);
  if (g.m >= g.c3) return {side, RegimeCase::I, std::nullopt, false};
  if (p.c1() == 0.0 && p.c2() == 0.0) return {side, RegimeCase::III, std::nullopt, false};
  const int b = detail::boundary_side(g);
  if (b == 0) return {side, RegimeCase::IISmooth, std::nullopt, true};
  const bool sudden = side == Side::AI ? b > 0 : (b < 0 && g.m > 0.0);
  return {side, sudden ? RegimeCase::IISudden : RegimeCase::IISmooth, std::nullopt, false};
}

inline double t_sc_AI(const XStateParams& p, double w) {
  const RegimeLabel r = classify(p, Side::AI);
  if (r.regime != RegimeCase::IISudden)
    throw RegimeError("no sudden change on side AI: regime " + r.name());
  return -w / detail::log_ratio(detail::magnitudes(p));
}

inline double t_sc_AII(const XStateParams& p, double w) {
  const RegimeLabel r = classify(p, Side::AII);
  if (r.regime != RegimeCase::IISudden)
    throw RegimeError("no sudden change on side AII: regime " + r.name());
  return w / detail::log_ratio(detail::magnitudes(p));
}

inline double t_sc(const XStateParams& p, double w, Side side) {
  return side == Side::AI ? t_sc_AI(p, w) : t_sc_AII(p, w);
}

/// classify() with t_sc filled in for the given frequency.
inline RegimeLabel classify(const XStateParams& p, Side side, double w) {
  RegimeLabel r = classify(p, side);
  if (r.regime == RegimeCase::IISudden) r.t_sc = t_sc(p, w, side);
  return r;
}

/// Log-spaced temperatures lo..hi inclusive.
inline std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi >= lo) || count == 0) throw InvalidInput("log_grid: need 0 < lo <= hi, count >= 1");
  std::vector<double> g(count);
  if (count == 1) {
    g[0] = lo;
    return g;
  }
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t i = 0; i < count; ++i)
    g[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

/// Numerical sudden-change temperature: locate a sign change of
/// (c3 term - m term) of the MIN formula on `temperatures`, then bisect.
inline double t_sc_oracle(const XStateParams& p, double w, std::span<const double> temperatures, Side side) {
  const auto g = detail::magnitudes(p);
  // Sign of (c3 term - m term); both terms share the positive factor s, which is divided out.
  auto gap = [&](double temp) {
    const ThermalAmps a = thermal_amps(UnruhPoint::make(w, temp));
    const double s = side == Side::AI ? a.f0_sq : a.f1_sq;
    return g.c3 * g.c3 * s - g.m * g.m;
  };
  if (g.m > 0.0) {
    for (std::size_t i = 1; i < temperatures.size(); ++i) {
      double lo = temperatures[i - 1], hi = temperatures[i];
      double glo = gap(lo);
      const double ghi = gap(hi);
      if (glo == 0.0) return lo;
      if (ghi == 0.0) return hi;
      if ((glo < 0.0) == (ghi < 0.0)) continue;
      while (hi - lo > 1e-14 * hi) {
        const double mid = 0.5 * (lo + hi);
        const double gm = gap(mid);
        if (gm == 0.0) return mid;
        if ((gm < 0.0) == (glo < 0.0)) {
          lo = mid;
          glo = gm;
        } else {
          hi = mid;
        }
      }
      return 0.5 * (lo + hi);
    }
  }
  throw RegimeError(std::string("no argmin switch on the temperature grid for side ") + to_string(side) +
                    " (regime " + classify(p, side).name() + ")");
}

/// Default oracle grid: 400 log-spaced points over [1e-3 w, 1e3 w].
inline double t_sc_oracle(const XStateParams& p, double w, Side side) {
  const auto grid = log_grid(1e-3 * w, 1e3 * w, 400);
  return t_sc_oracle(p, w, grid, side);
}

/// Shared T -> inf limit of N_AI and N_AII:
/// (2 c1^2 + 2 c2^2 + c3^2 - min[2 c1^2, 2 c2^2, c3^2]) / 16.
inline double asymptote(const XStateParams& p) {
  const double a = 2.0 * p.c1() * p.c1(), b = 2.0 * p.c2() * p.c2(), c = p.c3() * p.c3();
  return (a + b + c - std::min({a, b, c})) / 16.0;
}

enum class SumRegime { A, B, C };

inline const char* to_string(SumRegime r) {
  switch (r) {
    case SumRegime::A: return "a";
    case SumRegime::B: return "b";
    case SumRegime::C: return "c";
  }
  return "?";
}

struct SumLabel {
  SumRegime regime;
  std::optional<double> t_sc;
  bool boundary = false;

  std::string name() const { return std::string(to_string(regime)) + (boundary ? "_boundary" : ""); }
};

/// (a) |c1|,|c2| >= |c3|: constant in T.
/// (b) |c3| > m >= |c3|/sqrt 2: decreasing until T_sc = -w/ln(...), then constant.
/// (c) m < |c3|/sqrt 2: kink at T_sc = w/ln(...) (absent when m = 0).
inline SumLabel classify_sum(const XStateParams& p, double w) {
  const auto g = detail::magnitudes(p);
  if (g.m >= g.c3) return {SumRegime::A, std::nullopt, false};
  const int b = detail::boundary_side(g);
  if (b == 0) return {SumRegime::B, std::nullopt, true};
  if (b > 0) return {SumRegime::B, -w / detail::log_ratio(g), false};
  if (g.m == 0.0) return {SumRegime::C, std::nullopt, false};
  return {SumRegime::C, w / detail::log_ratio(g), false};
}

struct SumResult {
  double value;
  SumLabel label;
};

inline SumResult sum_min(const XStateParams& p, const UnruhPoint& u) {
  return {min_AI(p, u) + min_AII(p, u), classify_sum(p, u.w())};
}

}  // namespace unruh_min
