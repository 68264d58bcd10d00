// verify.hpp
// Seeded self-check: every closed form against its independent route.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "unruh_min/correlations.hpp"
#include "unruh_min/dynamics.hpp"
#include "unruh_min/errors.hpp"
#include "unruh_min/states.hpp"
#include "unruh_min/unruh.hpp"

namespace unruh_min {

struct SuiteResult {
  std::string name;
  std::string description;
  std::size_t checks = 0;
  double max_deviation = 0.0;
  double tolerance = 0.0;

  bool passed() const { return max_deviation <= tolerance; }
};

struct VerifyReport {
  std::uint64_t seed = 0;
  std::size_t draws = 0;
  std::vector<SuiteResult> suites;

  bool passed() const {
    return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed(); });
  }
};

/// Draws from the physical region and from the sudden-change windows.
/// std::uniform_real_distribution is avoided so the sequence depends only on mt19937_64.
class ParameterSampler {
 public:
  explicit ParameterSampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  XStateParams physical() {
    for (;;) {
      const auto p = XStateParams::coefficients(uniform(-1, 1), uniform(-1, 1), uniform(-1, 1));
      if (p.is_physical()) return p;
    }
  }

  /// w in [0.5, 2] and w/T log-uniform in [1e-3, 1e3].
  UnruhPoint point() {
    const double w = uniform(0.5, 2.0);
    const double ratio = std::exp(uniform(std::log(1e-3), std::log(1e3)));
    return UnruhPoint::make(w, w / ratio);
  }

  /// Coefficients whose N(T) on `side` has a sudden change, kept 1% away from
  /// the window edges. Not necessarily positive: the formulas only see c_i^2.
  XStateParams sudden(Side side) {
    const double c3 = uniform(0.2, 1.0);
    const double edge = std::sqrt(0.5);
    const double m = side == Side::AI ? c3 * uniform(edge * 1.01, 0.99) : c3 * uniform(0.01, edge * 0.99);
    const double big = uniform(m, 1.0);
    const double s1 = unit() < 0.5 ? -1 : 1, s2 = unit() < 0.5 ? -1 : 1, s3 = unit() < 0.5 ? -1 : 1;
    return unit() < 0.5 ? XStateParams::coefficients(s1 * m, s2 * big, s3 * c3)
                        : XStateParams::coefficients(s1 * big, s2 * m, s3 * c3);
  }

 private:
  double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  std::mt19937_64 rng_;
};

inline VerifyReport run_verify(std::uint64_t seed, std::size_t draws, const VariationalOptions& variational = {}) {
  if (draws == 0) throw InvalidInput("draws must be >= 1");
  VerifyReport rep;
  rep.seed = seed;
  rep.draws = draws;

  SuiteResult channel{"channel", "closed-form reductions vs tripartite partial trace (entrywise)", 0, 0.0, 1e-12};
  SuiteResult variation{"min_variational", "closed-form MIN vs direct maximization over measurements", 0, 0.0, 1e-8};
  SuiteResult identity{"bell_identity", "|N - Bmax^2/16|", 0, 0.0, 1e-12};
  SuiteResult ordering{"discord_ordering", "max(D - N, 0)", 0, 0.0, 1e-12};
  SuiteResult sudden{"t_sc_bisection", "relative |T_sc closed form - bisection|", 0, 0.0, 1e-8};

  ParameterSampler sampler(seed);
  for (std::size_t i = 0; i < draws; ++i) {
    const XStateParams p = sampler.physical();
    const UnruhPoint u = sampler.point();
    const DensityMatrix<8> rho8 = build_tripartite(p, u);
    for (Side side : {Side::AI, Side::AII}) {
      const BlochForm closed = closed_form(p, u, side);
      const DensityMatrix<4> rho = reduce(rho8, side);
      channel.max_deviation = std::max(channel.max_deviation, bloch_decompose(rho).max_abs_diff(closed));
      ++channel.checks;

      const double n = min_side(p, u, side);
      variation.max_deviation = std::max(variation.max_deviation, std::abs(min_variational(rho, variational) - n));
      ++variation.checks;

      const CorrelationReport r = analyze(closed);
      identity.max_deviation = std::max(identity.max_deviation, std::abs(r.N - r.Bmax * r.Bmax / 16.0));
      ++identity.checks;
      ordering.max_deviation = std::max(ordering.max_deviation, std::max(0.0, r.D - r.N));
      ++ordering.checks;
    }
    for (Side side : {Side::AI, Side::AII}) {
      const XStateParams q = sampler.sudden(side);
      const double w = sampler.uniform(0.5, 2.0);
      const double closed = t_sc(q, w, side);
      sudden.max_deviation = std::max(sudden.max_deviation, std::abs(t_sc_oracle(q, w, side) / closed - 1.0));
      ++sudden.checks;
    }
  }
  rep.suites = {channel, variation, identity, ordering, sudden};
  return rep;
}

}  // namespace unruh_min
