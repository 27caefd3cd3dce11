#pragma once

// Dense complex linear algebra over Eigen: Kronecker products, partial
// traces and a cyclic Jacobi eigensolver for Hermitian matrices. Everything
// here is templated on the real scalar type; the rest of the library uses
// the double-precision aliases at the bottom of this file.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sicprob/error.hpp"

namespace sicprob {

template <typename Scalar>
using CMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using CVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;
template <typename Scalar>
using RVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Index = Eigen::Index;

inline constexpr Index kDefaultDimCap = 4096;
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kUnitNormTol = 1e-12;
inline constexpr int kJacobiSweepBudget = 100;
inline constexpr double kJacobiOffDiagonalTol = 1e-13;

/// Largest entrywise modulus of A - B.
template <typename DerivedA, typename DerivedB>
auto max_abs_diff(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Real = typename Eigen::NumTraits<typename DerivedA::Scalar>::Real;
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "max_abs_diff: shapes differ");
  }
  if (a.size() == 0) return Real(0);
  return Real((a - b).cwiseAbs().maxCoeff());
}

/// <u|v>, conjugate-linear in the first argument.
template <typename Scalar>
std::complex<Scalar> inner(const CVector<Scalar>& u, const CVector<Scalar>& v) {
  if (u.size() != v.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                "inner: " + std::to_string(u.size()) + " vs " + std::to_string(v.size()));
  }
  return u.dot(v);  // Eigen conjugates the left operand
}

template <typename Scalar>
bool is_unit(const CVector<Scalar>& v, Scalar tol = Scalar(kUnitNormTol)) {
  return std::abs(v.squaredNorm() - Scalar(1)) <= tol;
}

template <typename Scalar>
bool is_hermitian(const CMatrix<Scalar>& m, Scalar tol = Scalar(kHermitianTol)) {
  if (m.rows() != m.cols() || m.rows() == 0) return false;
  return max_abs_diff(m, m.adjoint()) <= tol;
}

template <typename Scalar>
bool is_unitary(const CMatrix<Scalar>& u, Scalar tol = Scalar(kUnitaryTol)) {
  if (u.rows() != u.cols() || u.rows() == 0) return false;
  const CMatrix<Scalar> id = CMatrix<Scalar>::Identity(u.rows(), u.cols());
  return max_abs_diff(u.adjoint() * u, id) <= tol;
}

template <typename Scalar>
void require_hermitian(const CMatrix<Scalar>& m, const char* context) {
  if (!is_hermitian(m)) {
    throw Error(ErrorKind::NotHermitian, std::string(context) + ": matrix is not Hermitian");
  }
}

template <typename Scalar>
void require_unitary(const CMatrix<Scalar>& u, const char* context) {
  if (!is_unitary(u)) {
    throw Error(ErrorKind::NotUnitary, std::string(context) + ": matrix is not unitary");
  }
}

/// |v><v|
template <typename Scalar>
CMatrix<Scalar> projector(const CVector<Scalar>& v) {
  return v * v.adjoint();
}

/// Kronecker product A (x) B. Throws SizeOverflow when the result would
/// exceed `cap` rows.
template <typename Scalar>
CMatrix<Scalar> tensor(const CMatrix<Scalar>& a, const CMatrix<Scalar>& b, Index cap = kDefaultDimCap) {
  const Index rows = a.rows() * b.rows();
  const Index cols = a.cols() * b.cols();
  if (rows > cap || cols > cap) {
    throw Error(ErrorKind::SizeOverflow,
                "tensor: result dimension " + std::to_string(rows) + " exceeds cap " + std::to_string(cap));
  }
  CMatrix<Scalar> out(rows, cols);
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

template <typename Scalar>
CVector<Scalar> tensor(const CVector<Scalar>& a, const CVector<Scalar>& b, Index cap = kDefaultDimCap) {
  const Index n = a.size() * b.size();
  if (n > cap) {
    throw Error(ErrorKind::SizeOverflow,
                "tensor: result dimension " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  }
  CVector<Scalar> out(n);
  for (Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

template <typename Scalar>
struct HermitianEigen {
  RVector<Scalar> values;   // ascending
  CMatrix<Scalar> vectors;  // column k belongs to values(k)
  int sweeps = 0;
};

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
///
/// Each (p, q) rotation first removes the phase of a_pq with a diagonal
/// unitary, then applies the real symmetric Jacobi rotation that zeroes the
/// resulting real 2x2 block. Sweeps continue until the off-diagonal
/// Frobenius norm falls below kJacobiOffDiagonalTol relative to the norm of
/// the input.
template <typename Scalar>
HermitianEigen<Scalar> hermitian_eig(const CMatrix<Scalar>& m, int sweep_budget = kJacobiSweepBudget,
                                     Scalar off_tol = Scalar(kJacobiOffDiagonalTol)) {
  using C = std::complex<Scalar>;
  require_hermitian(m, "hermitian_eig");
  const Index n = m.rows();

  CMatrix<Scalar> a = (m + m.adjoint()) * Scalar(0.5);
  CMatrix<Scalar> v = CMatrix<Scalar>::Identity(n, n);
  const Scalar scale = std::max(a.norm(), std::numeric_limits<Scalar>::min());

  auto off_norm = [&] {
    Scalar s = 0;
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < n; ++i)
        if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
  };

  int sweep = 0;
  while (off_norm() > off_tol * scale) {
    if (sweep == sweep_budget) {
      throw Error(ErrorKind::NoConvergence,
                  "hermitian_eig: no convergence after " + std::to_string(sweep_budget) + " sweeps");
    }
    ++sweep;
    for (Index p = 0; p < n - 1; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const C apq = a(p, q);
        const Scalar g = std::abs(apq);
        if (g == Scalar(0)) continue;
        const C phase = apq / g;  // e^{i phi}
        const Scalar app = std::real(a(p, p));
        const Scalar aqq = std::real(a(q, q));
        const Scalar theta = (aqq - app) / (Scalar(2) * g);
        const Scalar t = (theta >= 0 ? Scalar(1) : Scalar(-1)) /
                         (std::abs(theta) + std::sqrt(theta * theta + Scalar(1)));
        const Scalar c = Scalar(1) / std::sqrt(t * t + Scalar(1));
        const Scalar s = t * c;

        // J restricted to (p, q): [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
        const C jpp = c;
        const C jpq = s;
        const C jqp = -s * std::conj(phase);
        const C jqq = c * std::conj(phase);

        for (Index k = 0; k < n; ++k) {  // A <- A J
          const C akp = a(k, p);
          const C akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
        }
        for (Index k = 0; k < n; ++k) {  // A <- J^H A
          const C apk = a(p, k);
          const C aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = C(0);
        a(q, p) = C(0);
        a(p, p) = C(std::real(a(p, p)), 0);
        a(q, q) = C(std::real(a(q, q)), 0);

        for (Index k = 0; k < n; ++k) {  // V <- V J
          const C vkp = v(k, p);
          const C vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
      }
    }
  }

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index(0));
  std::stable_sort(order.begin(), order.end(),
                   [&](Index x, Index y) { return std::real(a(x, x)) < std::real(a(y, y)); });

  HermitianEigen<Scalar> out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Index k = 0; k < n; ++k) {
    out.values(k) = std::real(a(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]));
    out.vectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
  }
  out.sweeps = sweep;
  return out;
}

template <typename Scalar>
RVector<Scalar> hermitian_eigenvalues(const CMatrix<Scalar>& m) {
  return hermitian_eig(m).values;
}

/// True iff the smallest eigenvalue is >= -tol.
template <typename Scalar>
bool is_psd(const CMatrix<Scalar>& m, Scalar tol) {
  return hermitian_eigenvalues(m).minCoeff() >= -tol;
}

/// Traces out factor `traced_index` of a matrix on the space
/// dims[0] (x) dims[1] (x) ... .
template <typename Scalar>
CMatrix<Scalar> partial_trace(const CMatrix<Scalar>& m, const std::vector<Index>& dims, Index traced_index) {
  if (dims.empty() || traced_index < 0 || traced_index >= static_cast<Index>(dims.size())) {
    throw Error(ErrorKind::DimensionMismatch, "partial_trace: traced_index out of range");
  }
  Index total = 1;
  for (Index d : dims) {
    if (d < 1) throw Error(ErrorKind::DimensionMismatch, "partial_trace: nonpositive factor dimension");
    total *= d;
  }
  if (m.rows() != total || m.cols() != total) {
    throw Error(ErrorKind::DimensionMismatch, "partial_trace: factor dimensions do not multiply to matrix size");
  }
  const auto k = static_cast<std::size_t>(traced_index);
  const Index left = std::accumulate(dims.begin(), dims.begin() + static_cast<std::ptrdiff_t>(k), Index(1),
                                     std::multiplies<>());
  const Index mid = dims[k];
  const Index right = total / (left * mid);

  CMatrix<Scalar> out = CMatrix<Scalar>::Zero(left * right, left * right);
  for (Index a = 0; a < left; ++a)
    for (Index c = 0; c < right; ++c)
      for (Index a2 = 0; a2 < left; ++a2)
        for (Index c2 = 0; c2 < right; ++c2) {
          std::complex<Scalar> s = 0;
          for (Index b = 0; b < mid; ++b) s += m((a * mid + b) * right + c, (a2 * mid + b) * right + c2);
          out(a * right + c, a2 * right + c2) = s;
        }
  return out;
}

using ComplexMatrix = CMatrix<double>;
using ComplexVector = CVector<double>;
using RealVector = RVector<double>;
using Complex = std::complex<double>;

}  // namespace sicprob
