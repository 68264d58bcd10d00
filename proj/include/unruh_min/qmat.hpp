// qmat.hpp
// Fixed-size dense complex kernels for two- and three-qubit states:
// Kronecker products, partial traces, Hilbert-Schmidt norms, and the
// closed-form eigenvalues of 3x3 real symmetric matrices.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>

#include "unruh_min/errors.hpp"

namespace unruh_min::qmat {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;

/// Square complex matrix of compile-time dimension N, row-major.
template <std::size_t N>
class ComplexMatrix {
 public:
  static constexpr std::size_t dim = N;

  constexpr ComplexMatrix() = default;

  static constexpr ComplexMatrix identity() {
    ComplexMatrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  constexpr cplx& operator()(std::size_t r, std::size_t c) { return a_[r * N + c]; }
  constexpr const cplx& operator()(std::size_t r, std::size_t c) const { return a_[r * N + c]; }

  std::span<const cplx, N * N> entries() const { return a_; }

  ComplexMatrix adjoint() const {
    ComplexMatrix m;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < N; ++c) m(c, r) = std::conj((*this)(r, c));
    return m;
  }

  cplx trace() const {
    cplx t{};
    for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
    return t;
  }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    for (std::size_t i = 0; i < N * N; ++i) a_[i] += o.a_[i];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    for (std::size_t i = 0; i < N * N; ++i) a_[i] -= o.a_[i];
    return *this;
  }
  ComplexMatrix& operator*=(cplx s) {
    for (auto& v : a_) v *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix m;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t k = 0; k < N; ++k) {
        const cplx ark = a(r, k);
        if (ark == cplx{}) continue;
        for (std::size_t c = 0; c < N; ++c) m(r, c) += ark * b(k, c);
      }
    return m;
  }

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::array<cplx, N * N> a_{};
};

/// Largest entrywise modulus of a - b.
template <std::size_t N>
double max_abs_diff(const ComplexMatrix<N>& a, const ComplexMatrix<N>& b) {
  double d = 0.0;
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c) d = std::max(d, std::abs(a(r, c) - b(r, c)));
  return d;
}

/// Pauli matrix sigma_i, with sigma_0 the identity.
inline const ComplexMatrix<2>& pauli(int i) {
  static const std::array<ComplexMatrix<2>, 4> table = [] {
    std::array<ComplexMatrix<2>, 4> p{};
    const cplx I{0.0, 1.0};
    p[0](0, 0) = 1.0;
    p[0](1, 1) = 1.0;
    p[1](0, 1) = 1.0;
    p[1](1, 0) = 1.0;
    p[2](0, 1) = -I;
    p[2](1, 0) = I;
    p[3](0, 0) = 1.0;
    p[3](1, 1) = -1.0;
    return p;
  }();
  if (i < 0 || i > 3) throw InvalidInput("pauli index must be in 0..3, got " + std::to_string(i));
  return table[static_cast<std::size_t>(i)];
}

/// Kronecker product; the row index of `a` is the major index.
template <std::size_t N, std::size_t M>
ComplexMatrix<N * M> tensor(const ComplexMatrix<N>& a, const ComplexMatrix<M>& b) {
  ComplexMatrix<N * M> out;
  for (std::size_t ar = 0; ar < N; ++ar)
    for (std::size_t ac = 0; ac < N; ++ac) {
      const cplx s = a(ar, ac);
      if (s == cplx{}) continue;
      for (std::size_t br = 0; br < M; ++br)
        for (std::size_t bc = 0; bc < M; ++bc) out(ar * M + br, ac * M + bc) = s * b(br, bc);
    }
  return out;
}

/// Sum of squared moduli of all entries.
template <std::size_t N>
double hs_norm_sq(const ComplexMatrix<N>& a) {
  double s = 0.0;
  for (const cplx& v : a.entries()) s += std::norm(v);
  return s;
}

/// Trace over every subsystem not listed in `keep`.
///
/// `dims` lists the subsystem dimensions in tensor order (first = most
/// significant); `keep` holds strictly increasing subsystem indices. The
/// result keeps the original subsystem order.
template <std::size_t K, std::size_t N>
ComplexMatrix<K> partial_trace(const ComplexMatrix<N>& m, std::span<const std::size_t> dims,
                               std::span<const std::size_t> keep) {
  constexpr std::size_t kMaxSubsystems = 8;
  if (dims.empty() || dims.size() > kMaxSubsystems) throw InvalidInput("partial_trace: bad subsystem count");
  std::size_t total = 1;
  for (std::size_t d : dims) {
    if (d == 0) throw InvalidInput("partial_trace: zero subsystem dimension");
    total *= d;
  }
  if (total != N)
    throw InvalidInput("partial_trace: subsystem dimensions multiply to " + std::to_string(total) +
                       ", matrix dimension is " + std::to_string(N));
  if (keep.empty() || keep.size() >= dims.size())
    throw InvalidInput("partial_trace: kept set must be a nonempty proper subset");

  std::array<bool, kMaxSubsystems> kept{};
  std::size_t kept_dim = 1;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] >= dims.size()) throw InvalidInput("partial_trace: subsystem index out of range");
    if (i > 0 && keep[i] <= keep[i - 1]) throw InvalidInput("partial_trace: kept indices must be increasing");
    kept[keep[i]] = true;
    kept_dim *= dims[keep[i]];
  }
  if (kept_dim != K)
    throw InvalidInput("partial_trace: kept subsystems have dimension " + std::to_string(kept_dim) +
                       ", result dimension is " + std::to_string(K));

  // Strides of each subsystem inside the full index.
  std::array<std::size_t, kMaxSubsystems> stride{};
  {
    std::size_t s = 1;
    for (std::size_t i = dims.size(); i-- > 0;) {
      stride[i] = s;
      s *= dims[i];
    }
  }
  // Map a (kept index, traced index) pair onto the full index.
  auto compose = [&](std::size_t kidx, std::size_t tidx) {
    std::size_t full = 0;
    for (std::size_t i = dims.size(); i-- > 0;) {
      if (kept[i]) {
        full += (kidx % dims[i]) * stride[i];
        kidx /= dims[i];
      } else {
        full += (tidx % dims[i]) * stride[i];
        tidx /= dims[i];
      }
    }
    return full;
  };

  const std::size_t traced_dim = N / K;
  ComplexMatrix<K> out;
  for (std::size_t r = 0; r < K; ++r)
    for (std::size_t c = 0; c < K; ++c) {
      cplx s{};
      for (std::size_t t = 0; t < traced_dim; ++t) s += m(compose(r, t), compose(c, t));
      out(r, c) = s;
    }
  return out;
}

/// 3x3 real symmetric matrix; only the upper triangle is stored.
class Sym3 {
 public:
  constexpr Sym3() = default;
  constexpr Sym3(double xx, double xy, double xz, double yy, double yz, double zz)
      : u_{xx, xy, xz, yy, yz, zz} {}

  static constexpr Sym3 diagonal(double a, double b, double c) { return {a, 0, 0, b, 0, c}; }

  /// m m^T
  static Sym3 gram(const Mat3& m) {
    auto dot = [&](std::size_t i, std::size_t j) {
      return m[i][0] * m[j][0] + m[i][1] * m[j][1] + m[i][2] * m[j][2];
    };
    return {dot(0, 0), dot(0, 1), dot(0, 2), dot(1, 1), dot(1, 2), dot(2, 2)};
  }

  /// v v^T
  static Sym3 outer(const Vec3& v) {
    return {v[0] * v[0], v[0] * v[1], v[0] * v[2], v[1] * v[1], v[1] * v[2], v[2] * v[2]};
  }

  constexpr double operator()(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    constexpr std::array<std::array<std::size_t, 3>, 3> slot{{{0, 1, 2}, {1, 3, 4}, {2, 4, 5}}};
    return u_[slot[i][j]];
  }

  double trace() const { return u_[0] + u_[3] + u_[5]; }

  double determinant() const {
    const auto& [xx, xy, xz, yy, yz, zz] = u_;
    return xx * (yy * zz - yz * yz) - xy * (xy * zz - yz * xz) + xz * (xy * yz - yy * xz);
  }

  /// v^T M v
  double quadratic(const Vec3& v) const {
    double s = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) s += v[i] * (*this)(i, j) * v[j];
    return s;
  }

  friend Sym3 operator+(const Sym3& a, const Sym3& b) {
    Sym3 s;
    for (std::size_t i = 0; i < 6; ++i) s.u_[i] = a.u_[i] + b.u_[i];
    return s;
  }

  bool is_diagonal() const { return u_[1] == 0.0 && u_[2] == 0.0 && u_[4] == 0.0; }

 private:
  std::array<double, 6> u_{};
};

namespace detail {

// Cyclic Jacobi rotations; used when the trigonometric route is ill-conditioned.
inline Vec3 jacobi_eigenvalues(const Sym3& s) {
  double a[3][3];
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) a[i][j] = s(i, j);
  for (int sweep = 0; sweep < 64; ++sweep) {
    const double off = a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2];
    if (off == 0.0) break;
    for (int p = 0; p < 2; ++p)
      for (int q = p + 1; q < 3; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (int k = 0; k < 3; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - sn * akq;
          a[k][q] = sn * akp + c * akq;
        }
        for (int k = 0; k < 3; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - sn * aqk;
          a[q][k] = sn * apk + c * aqk;
        }
        a[p][q] = a[q][p] = 0.0;
      }
  }
  Vec3 ev{a[0][0], a[1][1], a[2][2]};
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace detail

/// Eigenvalues of a real symmetric 3x3 matrix, ascending.
///
/// Diagonal input is returned sorted without arithmetic. Otherwise the
/// trigonometric cubic solution is used, falling back to Jacobi rotations
/// when the normalized discriminant 1 - r^2 drops below 1e-12.
inline Vec3 eig_sym3(const Sym3& m) {
  if (m.is_diagonal()) {
    Vec3 ev{m(0, 0), m(1, 1), m(2, 2)};
    std::sort(ev.begin(), ev.end());
    return ev;
  }
  const double q = m.trace() / 3.0;
  const double d0 = m(0, 0) - q, d1 = m(1, 1) - q, d2 = m(2, 2) - q;
  const double p1 = m(0, 1) * m(0, 1) + m(0, 2) * m(0, 2) + m(1, 2) * m(1, 2);
  const double p = std::sqrt((d0 * d0 + d1 * d1 + d2 * d2 + 2.0 * p1) / 6.0);
  const Sym3 b{d0 / p, m(0, 1) / p, m(0, 2) / p, d1 / p, m(1, 2) / p, d2 / p};
  const double r = b.determinant() / 2.0;
  if (1.0 - r * r < 1e-12) return detail::jacobi_eigenvalues(m);

  const double phi = std::acos(std::clamp(r, -1.0, 1.0)) / 3.0;
  const double hi = q + 2.0 * p * std::cos(phi);
  const double lo = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
  const double mid = 3.0 * q - hi - lo;
  Vec3 ev{lo, mid, hi};
  std::sort(ev.begin(), ev.end());
  return ev;
}

/// Density matrix of dimension N: Hermitian, unit trace, PSD, checked on construction.
template <std::size_t N>
class DensityMatrix {
 public:
  static constexpr double kHermitianTol = 1e-12;
  static constexpr double kTraceTol = 1e-12;
  static constexpr double kPsdTol = 1e-10;

  explicit DensityMatrix(const ComplexMatrix<N>& m) : m_(m) {
    for (const cplx& v : m.entries())
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw InvalidInput("density matrix has non-finite entries");
    if (max_abs_diff(m, m.adjoint()) > kHermitianTol) throw InvalidInput("density matrix is not Hermitian");
    const cplx tr = m.trace();
    if (std::abs(tr - 1.0) > kTraceTol)
      throw InvalidInput("density matrix trace is " + std::to_string(tr.real()) + ", expected 1");
    if (!is_psd(m, kPsdTol)) throw InvalidInput("density matrix is not positive semidefinite");
  }

  const ComplexMatrix<N>& matrix() const { return m_; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

  /// True iff every eigenvalue of m exceeds -tol, via Cholesky of m + tol*I.
  static bool is_psd(const ComplexMatrix<N>& m, double tol) {
    ComplexMatrix<N> a = m;
    for (std::size_t i = 0; i < N; ++i) a(i, i) += tol;
    for (std::size_t j = 0; j < N; ++j) {
      double d = a(j, j).real();
      for (std::size_t k = 0; k < j; ++k) d -= std::norm(a(j, k));
      if (!(d > 0.0)) return false;
      const double l = std::sqrt(d);
      a(j, j) = l;
      for (std::size_t i = j + 1; i < N; ++i) {
        cplx s = a(i, j);
        for (std::size_t k = 0; k < j; ++k) s -= a(i, k) * std::conj(a(j, k));
        a(i, j) = s / l;
      }
    }
    return true;
  }

 private:
  ComplexMatrix<N> m_;
};

template <std::size_t K, std::size_t N>
DensityMatrix<K> partial_trace(const DensityMatrix<N>& rho, std::span<const std::size_t> dims,
                               std::span<const std::size_t> keep) {
  return DensityMatrix<K>(partial_trace<K>(rho.matrix(), dims, keep));
}

}  // namespace unruh_min::qmat
