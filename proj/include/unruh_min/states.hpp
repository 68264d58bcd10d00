// states.hpp
// Bell-diagonal X states rho = (I + sum_i c_i sigma_i (x) sigma_i) / 4 and
// their Pauli-basis (Bloch) decomposition.
//
// Basis ordering is |00>, |01>, |10>, |11> with subsystem A on the left.

#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>

#include "unruh_min/errors.hpp"
#include "unruh_min/qmat.hpp"

namespace unruh_min {

using qmat::DensityMatrix;
using qmat::Mat3;
using qmat::Vec3;

/// Coefficient triple (c1, c2, c3) of an X state.
///
/// Every instance satisfies |c_i| <= 1. Positivity of the state is checked
/// once on construction: `make` rejects non-positive triples, while
/// `coefficients` accepts them and records the outcome in `is_physical()`.
/// Closed-form formulas depend only on c_i^2 and accept either kind;
/// anything that builds a density matrix requires a physical triple.
class XStateParams {
 public:
  static constexpr double kPhysicalTol = 4e-12;

  static XStateParams make(double c1, double c2, double c3) {
    XStateParams p = coefficients(c1, c2, c3);
    if (!p.physical_) throw UnphysicalState(p.violation());
    return p;
  }

  static XStateParams coefficients(double c1, double c2, double c3) {
    const std::array<double, 3> c{c1, c2, c3};
    for (std::size_t i = 0; i < 3; ++i) {
      if (!std::isfinite(c[i]) || std::abs(c[i]) > 1.0) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "coefficient c%zu = %g is outside [-1, 1]", i + 1, c[i]);
        throw UnphysicalState(buf);
      }
    }
    XStateParams p(c1, c2, c3);
    p.physical_ = p.violation().empty();
    return p;
  }

  double c1() const { return c_[0]; }
  double c2() const { return c_[1]; }
  double c3() const { return c_[2]; }
  double operator[](std::size_t i) const { return c_[i]; }
  bool is_physical() const { return physical_; }

  /// The four values 4*lambda_k, in the order
  /// (1-c1-c2-c3), (1-c1+c2+c3), (1+c1-c2+c3), (1+c1+c2-c3).
  std::array<double, 4> scaled_eigenvalues() const {
    const auto [a, b, c] = c_;
    return {1 - a - b - c, 1 - a + b + c, 1 + a - b + c, 1 + a + b - c};
  }

  /// Human-readable description of the first negative eigenvalue, or "" if none.
  std::string violation() const {
    static constexpr std::array<const char*, 4> names{"(1 - c1 - c2 - c3)/4", "(1 - c1 + c2 + c3)/4",
                                                      "(1 + c1 - c2 + c3)/4", "(1 + c1 + c2 - c3)/4"};
    const auto ev = scaled_eigenvalues();
    for (std::size_t k = 0; k < 4; ++k) {
      if (ev[k] < -kPhysicalTol) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "unphysical X state (%g, %g, %g): eigenvalue %s = %g < 0", c_[0], c_[1],
                      c_[2], names[k], ev[k] / 4.0);
        return buf;
      }
    }
    return {};
  }

  friend bool operator==(const XStateParams& a, const XStateParams& b) { return a.c_ == b.c_; }

 private:
  XStateParams(double c1, double c2, double c3) : c_{c1, c2, c3} {}
  std::array<double, 3> c_;
  bool physical_ = false;
};

/// Pauli-basis decomposition
/// rho = (I(x)I + sum x_i s_i(x)I + sum y_j I(x)s_j + sum t_ij s_i(x)s_j) / 4.
struct BlochForm {
  Vec3 x{};
  Vec3 y{};
  Mat3 t{};

  static BlochForm diagonal(const Vec3& y, double t1, double t2, double t3) {
    BlochForm b;
    b.y = y;
    b.t[0][0] = t1;
    b.t[1][1] = t2;
    b.t[2][2] = t3;
    return b;
  }

  /// Largest absolute entrywise difference over x, y and t.
  double max_abs_diff(const BlochForm& o) const {
    double d = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      d = std::max({d, std::abs(x[i] - o.x[i]), std::abs(y[i] - o.y[i])});
      for (std::size_t j = 0; j < 3; ++j) d = std::max(d, std::abs(t[i][j] - o.t[i][j]));
    }
    return d;
  }
};

inline DensityMatrix<4> build_x_state(const XStateParams& p) {
  if (!p.is_physical()) throw UnphysicalState(p.violation());
  using qmat::pauli;
  using qmat::tensor;
  auto m = qmat::ComplexMatrix<4>::identity();
  for (int i = 1; i <= 3; ++i) m += p[static_cast<std::size_t>(i - 1)] * tensor(pauli(i), pauli(i));
  m *= 0.25;
  return DensityMatrix<4>(m);
}

inline BlochForm bloch_decompose(const DensityMatrix<4>& rho) {
  using qmat::pauli;
  using qmat::tensor;
  auto expect = [&](int i, int j) { return (rho.matrix() * tensor(pauli(i), pauli(j))).trace().real(); };
  BlochForm b;
  for (int i = 1; i <= 3; ++i) {
    const auto k = static_cast<std::size_t>(i - 1);
    b.x[k] = expect(i, 0);
    b.y[k] = expect(0, i);
    for (int j = 1; j <= 3; ++j) b.t[k][static_cast<std::size_t>(j - 1)] = expect(i, j);
  }
  return b;
}

inline qmat::ComplexMatrix<4> bloch_matrix(const BlochForm& b) {
  using qmat::pauli;
  using qmat::tensor;
  auto m = qmat::ComplexMatrix<4>::identity();
  for (int i = 1; i <= 3; ++i) {
    const auto k = static_cast<std::size_t>(i - 1);
    m += b.x[k] * tensor(pauli(i), pauli(0));
    m += b.y[k] * tensor(pauli(0), pauli(i));
    for (int j = 1; j <= 3; ++j) m += b.t[k][static_cast<std::size_t>(j - 1)] * tensor(pauli(i), pauli(j));
  }
  m *= 0.25;
  return m;
}

/// Inverse of bloch_decompose; throws if the result is not a valid state.
inline DensityMatrix<4> bloch_reconstruct(const BlochForm& b) { return DensityMatrix<4>(bloch_matrix(b)); }

/// Werner family (a, -a, a); a = 1 is |Phi+>.
inline XStateParams werner(double alpha) { return XStateParams::make(alpha, -alpha, alpha); }

/// Named X states: bell_phi_plus, bell_phi_minus, bell_psi_plus,
/// bell_psi_minus, or werner(<alpha>).
inline XStateParams named_state(std::string_view name) {
  if (name == "bell_phi_plus") return XStateParams::make(1, -1, 1);
  if (name == "bell_phi_minus") return XStateParams::make(-1, 1, 1);
  if (name == "bell_psi_plus") return XStateParams::make(1, 1, -1);
  if (name == "bell_psi_minus") return XStateParams::make(-1, -1, -1);
  constexpr std::string_view prefix = "werner(";
  if (name.starts_with(prefix) && name.ends_with(")")) {
    const std::string arg(name.substr(prefix.size(), name.size() - prefix.size() - 1));
    std::size_t used = 0;
    double alpha = 0.0;
    try {
      alpha = std::stod(arg, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != arg.size()) throw InvalidInput("werner parameter is not a number: '" + arg + "'");
    return werner(alpha);
  }
  throw InvalidInput("unknown named state '" + std::string(name) + "'");
}

}  // namespace unruh_min
