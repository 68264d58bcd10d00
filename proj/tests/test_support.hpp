#pragma once

#include <cmath>
#include <random>

#include "unruh_min/states.hpp"
#include "unruh_min/unruh.hpp"

namespace unruh_min::testing {

/// Uniform draw from the physical (tetrahedral) region of (c1, c2, c3).
inline XStateParams random_physical(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    const auto p = XStateParams::coefficients(u(rng), u(rng), u(rng));
    if (p.is_physical()) return p;
  }
}

/// w in [0.5, 2], w/T log-uniform in [1e-3, 1e3].
inline UnruhPoint random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> w(0.5, 2.0);
  std::uniform_real_distribution<double> lr(std::log(1e-3), std::log(1e3));
  const double ww = w(rng);
  return UnruhPoint::make(ww, ww / std::exp(lr(rng)));
}

}  // namespace unruh_min::testing
