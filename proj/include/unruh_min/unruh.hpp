// unruh.hpp
// Fermionic single-mode Unruh channel. Rob's Minkowski mode is rewritten in
// the Rindler basis (region I x region II):
//
//   |0>_B -> f0 |0>_I |0>_II + f1 |1>_I |1>_II,   |1>_B -> |1>_I |0>_II
//
// with f0 = (exp(-w/T) + 1)^(-1/2), f1 = (exp(w/T) + 1)^(-1/2).

#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "unruh_min/errors.hpp"
#include "unruh_min/qmat.hpp"
#include "unruh_min/states.hpp"

namespace unruh_min {

/// Which reduction of the tripartite state: Alice with region I or region II.
enum class Side { AI, AII };

inline const char* to_string(Side s) { return s == Side::AI ? "AI" : "AII"; }

/// Mode frequency w and Unruh temperature T (k_B = 1). T may be +inf.
class UnruhPoint {
 public:
  /// Above this w/T the amplitudes are pinned to their T = 0 values.
  static constexpr double kOverflowRatio = 700.0;

  static UnruhPoint make(double w, double temperature) {
    if (!(w > 0.0) || !std::isfinite(w)) throw InvalidInput("mode frequency w must be positive and finite");
    if (std::isnan(temperature) || temperature < 0.0)
      throw InvalidInput("Unruh temperature must be >= 0 (or +inf)");
    return UnruhPoint(w, temperature);
  }

  double w() const { return w_; }
  double temperature() const { return t_; }
  /// Proper acceleration a = 2 pi T.
  double acceleration() const { return 2.0 * std::numbers::pi * t_; }

  /// w / T, with T = 0 -> +inf and T = inf -> 0 exactly.
  double ratio() const {
    if (t_ == 0.0) return std::numeric_limits<double>::infinity();
    if (std::isinf(t_)) return 0.0;
    return w_ / t_;
  }

 private:
  UnruhPoint(double w, double t) : w_(w), t_(t) {}
  double w_;
  double t_;
};

struct ThermalAmps {
  double f0;
  double f1;
  double f0_sq;  // 1 / (exp(-w/T) + 1)
  double f1_sq;  // 1 / (exp(w/T) + 1)
};

inline ThermalAmps thermal_amps(const UnruhPoint& u) {
  const double r = u.ratio();
  if (r > UnruhPoint::kOverflowRatio) return {1.0, 0.0, 1.0, 0.0};
  const double e = std::exp(-r);
  const double f0_sq = 1.0 / (1.0 + e);
  const double f1_sq = e / (1.0 + e);
  return {std::sqrt(f0_sq), std::sqrt(f1_sq), f0_sq, f1_sq};
}

/// Eight-dimensional state over A (x) I (x) II.
inline DensityMatrix<8> build_tripartite(const XStateParams& p, const UnruhPoint& u) {
  const DensityMatrix<4> rho = build_x_state(p);
  const ThermalAmps amps = thermal_amps(u);

  // Isometry from Rob's qubit into I (x) II; rows index |I, II>.
  std::array<std::array<double, 2>, 4> iso{};
  iso[0b00][0] = amps.f0;
  iso[0b11][0] = amps.f1;
  iso[0b10][1] = 1.0;

  qmat::ComplexMatrix<8> out;
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t k = 0; k < 4; ++k)
      for (std::size_t a2 = 0; a2 < 2; ++a2)
        for (std::size_t k2 = 0; k2 < 4; ++k2) {
          qmat::cplx s{};
          for (std::size_t b = 0; b < 2; ++b)
            for (std::size_t b2 = 0; b2 < 2; ++b2)
              s += iso[k][b] * rho(a * 2 + b, a2 * 2 + b2) * iso[k2][b2];
          out(a * 4 + k, a2 * 4 + k2) = s;
        }
  return DensityMatrix<8>(out);
}

namespace detail {
inline constexpr std::array<std::size_t, 3> kTripartiteDims{2, 2, 2};
inline constexpr std::array<std::size_t, 2> kKeepAI{0, 1};
inline constexpr std::array<std::size_t, 2> kKeepAII{0, 2};
}  // namespace detail

/// Alice and Rob (region I): region II traced out.
inline DensityMatrix<4> reduce_AI(const DensityMatrix<8>& rho) {
  return qmat::partial_trace<4>(rho, detail::kTripartiteDims, detail::kKeepAI);
}

/// Alice and anti-Rob (region II): region I traced out.
inline DensityMatrix<4> reduce_AII(const DensityMatrix<8>& rho) {
  return qmat::partial_trace<4>(rho, detail::kTripartiteDims, detail::kKeepAII);
}

/// Bloch form of rho_{A,I}: y = (0, 0, -f1^2), T = diag(c1 f0, c2 f0, c3 f0^2).
inline BlochForm closed_form_AI(const XStateParams& p, const UnruhPoint& u) {
  const ThermalAmps a = thermal_amps(u);
  return BlochForm::diagonal({0.0, 0.0, -a.f1_sq}, p.c1() * a.f0, p.c2() * a.f0, p.c3() * a.f0_sq);
}

/// Bloch form of rho_{A,II}: y = (0, 0, f0^2), T = diag(c1 f1, -c2 f1, -c3 f1^2).
inline BlochForm closed_form_AII(const XStateParams& p, const UnruhPoint& u) {
  const ThermalAmps a = thermal_amps(u);
  return BlochForm::diagonal({0.0, 0.0, a.f0_sq}, p.c1() * a.f1, -p.c2() * a.f1, -p.c3() * a.f1_sq);
}

inline BlochForm closed_form(const XStateParams& p, const UnruhPoint& u, Side side) {
  return side == Side::AI ? closed_form_AI(p, u) : closed_form_AII(p, u);
}

inline DensityMatrix<4> reduce(const DensityMatrix<8>& rho, Side side) {
  return side == Side::AI ? reduce_AI(rho) : reduce_AII(rho);
}

}  // namespace unruh_min
