// correlations.hpp
// Measurement-induced nonlocality (closed form and a variational search over
// local von Neumann measurements), geometric discord, and the maximal
// Bell-CHSH expectation for two-qubit states in Bloch form.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "unruh_min/errors.hpp"
#include "unruh_min/qmat.hpp"
#include "unruh_min/states.hpp"
#include "unruh_min/unruh.hpp"

namespace unruh_min {

enum class MinBranch { LocalVectorNonzero, LocalVectorZero };
enum class Method { ClosedForm, Variational };

inline const char* to_string(MinBranch b) { return b == MinBranch::LocalVectorZero ? "x=0" : "x!=0"; }
inline const char* to_string(Method m) { return m == Method::ClosedForm ? "closed_form" : "variational"; }

struct MinResult {
  double value;
  MinBranch branch;
};

/// Below this norm the local Bloch vector is treated as zero.
inline constexpr double kLocalVectorTol = 1e-12;

inline double norm_sq(const Vec3& v) { return v[0] * v[0] + v[1] * v[1] + v[2] * v[2]; }

inline double frobenius_sq(const Mat3& t) {
  double s = 0.0;
  for (const auto& row : t) s += norm_sq(row);
  return s;
}

/// N = (tr TT^t - x^t TT^t x / |x|^2) / 4 if x != 0, else (tr TT^t - lambda_min) / 4.
inline MinResult min_closed(const BlochForm& b) {
  const qmat::Sym3 tt = qmat::Sym3::gram(b.t);
  const double xn = norm_sq(b.x);
  if (std::sqrt(xn) > kLocalVectorTol) {
    const double v = 0.25 * (tt.trace() - tt.quadratic(b.x) / xn);
    return {std::max(0.0, v), MinBranch::LocalVectorNonzero};
  }
  const auto ev = qmat::eig_sym3(tt);
  return {std::max(0.0, 0.25 * (tt.trace() - ev[0])), MinBranch::LocalVectorZero};
}

/// 2 sqrt(mu1 + mu2) over the two largest eigenvalues of TT^t.
inline double chsh_bmax(const BlochForm& b) {
  const auto ev = qmat::eig_sym3(qmat::Sym3::gram(b.t));
  return 2.0 * std::sqrt(std::max(0.0, ev[1] + ev[2]));
}

/// (|x|^2 + |T|_F^2 - k_max) / 4, k_max the top eigenvalue of xx^t + TT^t.
inline double geometric_discord(const BlochForm& b) {
  const qmat::Sym3 k = qmat::Sym3::outer(b.x) + qmat::Sym3::gram(b.t);
  const double kmax = qmat::eig_sym3(k)[2];
  return std::max(0.0, 0.25 * (norm_sq(b.x) + frobenius_sq(b.t) - kmax));
}

struct CorrelationReport {
  double N;
  double D;
  double Bmax;
  MinBranch branch;
  Method method;
  // Two eigenvalues of TT^t tie for the minimum, so the attaining index is ambiguous.
  bool degenerate;
};

inline CorrelationReport analyze(const BlochForm& b) {
  const MinResult n = min_closed(b);
  const auto ev = qmat::eig_sym3(qmat::Sym3::gram(b.t));
  const double scale = std::max(1.0, std::abs(ev[2]));
  const bool tie = std::abs(ev[1] - ev[0]) <= 1e-14 * scale;
  return {n.value, geometric_discord(b), chsh_bmax(b), n.branch, Method::ClosedForm, tie};
}

namespace detail {
// The three bracketed terms of the A-I / A-II MIN formula, before the 1/4.
inline std::array<double, 3> min_terms(const XStateParams& p, double inv_d) {
  return {p.c1() * p.c1() * inv_d, p.c2() * p.c2() * inv_d, p.c3() * p.c3() * inv_d * inv_d};
}

inline double quarter_sum_minus_min(const std::array<double, 3>& t) {
  return 0.25 * (t[0] + t[1] + t[2] - std::min({t[0], t[1], t[2]}));
}
}  // namespace detail

/// Explicit A-I formula with d = exp(-w/T) + 1:
/// (c1^2/d + c2^2/d + c3^2/d^2 - min[...]) / 4.
inline double min_AI(const XStateParams& p, const UnruhPoint& u) {
  const double r = u.ratio();
  const double inv_d = r > UnruhPoint::kOverflowRatio ? 1.0 : 1.0 / (std::exp(-r) + 1.0);
  return detail::quarter_sum_minus_min(detail::min_terms(p, inv_d));
}

/// Explicit A-II formula with d = exp(w/T) + 1.
inline double min_AII(const XStateParams& p, const UnruhPoint& u) {
  const double r = u.ratio();
  double inv_d = 0.0;
  if (r <= UnruhPoint::kOverflowRatio) {
    const double e = std::exp(-r);
    inv_d = e / (1.0 + e);
  }
  return detail::quarter_sum_minus_min(detail::min_terms(p, inv_d));
}

inline double min_side(const XStateParams& p, const UnruhPoint& u, Side side) {
  return side == Side::AI ? min_AI(p, u) : min_AII(p, u);
}

struct VariationalOptions {
  int resolution = 4096;  // Fibonacci-sphere directions
  int refinement_steps = 40;
};

namespace detail {

inline Vec3 normalized(const Vec3& v) {
  const double n = std::sqrt(norm_sq(v));
  return {v[0] / n, v[1] / n, v[2] / n};
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// |rho - sum_(+/-) (P+/- (x) I) rho (P+/- (x) I)|^2 with P+/- = (I +/- n.sigma) / 2.
inline double measurement_disturbance(const qmat::ComplexMatrix<4>& rho, const Vec3& n) {
  using qmat::pauli;
  qmat::ComplexMatrix<2> ns;
  for (int i = 1; i <= 3; ++i) ns += n[static_cast<std::size_t>(i - 1)] * pauli(i);
  const auto id2 = qmat::ComplexMatrix<2>::identity();
  const auto plus = qmat::tensor(0.5 * (id2 + ns), id2);
  const auto minus = qmat::tensor(0.5 * (id2 - ns), id2);
  const auto post = plus * rho * plus + minus * rho * minus;
  return qmat::hs_norm_sq(rho - post);
}

// Maximize f on [lo, hi] by golden-section search.
template <typename F>
double golden_section_max(F&& f, double lo, double hi, double tol) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace detail

/// Direct maximization of |rho - Pi(rho)|^2 over local projective measurements
/// on A that leave rho_A unchanged.
///
/// If rho_A has nonzero Bloch vector x, the only admissible axis is x/|x|.
/// Otherwise every axis is admissible: the sphere is scanned on a Fibonacci
/// lattice, then the best direction is polished by Newton steps on the
/// tangent plane with a golden-section line search.
inline double min_variational(const DensityMatrix<4>& rho, const VariationalOptions& opt = {}) {
  if (opt.resolution < 64) throw InvalidInput("variational MIN needs at least 64 sphere directions");
  if (opt.refinement_steps < 0) throw InvalidInput("refinement steps must be >= 0");

  static constexpr std::array<std::size_t, 2> dims{2, 2};
  static constexpr std::array<std::size_t, 1> keep_a{0};
  const auto rho_a = qmat::partial_trace<2>(rho.matrix(), dims, keep_a);
  Vec3 x{};
  for (int i = 1; i <= 3; ++i) x[static_cast<std::size_t>(i - 1)] = (rho_a * qmat::pauli(i)).trace().real();

  const auto& m = rho.matrix();
  if (std::sqrt(norm_sq(x)) > kLocalVectorTol) return detail::measurement_disturbance(m, detail::normalized(x));

  const int count = opt.resolution;
  const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
  Vec3 best{0, 0, 1};
  double best_val = -1.0;
  for (int i = 0; i < count; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / count;
    const double rad = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden_angle * i;
    const Vec3 n{rad * std::cos(phi), rad * std::sin(phi), z};
    const double v = detail::measurement_disturbance(m, n);
    if (v > best_val) {
      best_val = v;
      best = n;
    }
  }

  // Newton iterations on the tangent plane at `best`, derivatives by central differences.
  constexpr double h = 1e-4;
  for (int step = 0; step < opt.refinement_steps; ++step) {
    const Vec3 e1 = best;
    const Vec3 helper = std::abs(e1[0]) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    const Vec3 e2 = detail::normalized(detail::cross(e1, helper));
    const Vec3 e3 = detail::cross(e1, e2);
    auto at = [&](double u, double v) {
      Vec3 n;
      for (std::size_t k = 0; k < 3; ++k) n[k] = e1[k] + u * e2[k] + v * e3[k];
      return detail::normalized(n);
    };
    auto g = [&](double u, double v) { return detail::measurement_disturbance(m, at(u, v)); };

    const double f0 = best_val;
    const double fu1 = g(h, 0), fu0 = g(-h, 0), fv1 = g(0, h), fv0 = g(0, -h);
    const double gu = (fu1 - fu0) / (2 * h), gv = (fv1 - fv0) / (2 * h);
    const double huu = (fu1 - 2 * f0 + fu0) / (h * h), hvv = (fv1 - 2 * f0 + fv0) / (h * h);
    const double huv = (g(h, h) - g(h, -h) - g(-h, h) + g(-h, -h)) / (4 * h * h);
    const double det = huu * hvv - huv * huv;

    double du = gu, dv = gv, len = 0.1;
    if (huu < 0 && det > 0) {
      du = -(hvv * gu - huv * gv) / det;
      dv = -(huu * gv - huv * gu) / det;
      len = std::hypot(du, dv);
    }
    const double norm = std::hypot(du, dv);
    if (!(norm > 0) || !std::isfinite(norm)) break;
    du /= norm;
    dv /= norm;
    const double t = detail::golden_section_max([&](double s) { return g(s * du, s * dv); }, -2 * len, 2 * len,
                                                std::max(1e-3 * len, 1e-15));
    const double val = g(t * du, t * dv);
    if (!(val > best_val)) break;
    best_val = val;
    best = at(t * du, t * dv);
    if (std::abs(t) < 1e-10) break;
  }
  return best_val;
}

}  // namespace unruh_min
