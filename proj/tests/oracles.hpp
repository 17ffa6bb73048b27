#pragma once

// Independent reference computations for tests. Nothing here goes through the
// eigensolver, so agreement with the library is a genuine cross-check.

#include <cmath>
#include <complex>
#include <vector>

#include "qgeom/matrix.hpp"

namespace oracle {

using qgeom::ComplexMatrix;
using qgeom::cplx;

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k) m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
  return m;
}

/// Dense complex Gaussian elimination with partial pivoting: solves M x = b.
inline std::vector<cplx> solve_linear(std::vector<cplx> m, std::vector<cplx> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(m[r * n + col]) > std::abs(m[piv * n + col])) piv = r;
    if (piv != col) {
      for (std::size_t k = 0; k < n; ++k) std::swap(m[piv * n + k], m[col * n + k]);
      std::swap(b[piv], b[col]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const cplx f = m[r * n + col] / m[col * n + col];
      for (std::size_t k = col; k < n; ++k) m[r * n + k] -= f * m[col * n + k];
      b[r] -= f * b[col];
    }
  }
  std::vector<cplx> x(n);
  for (std::size_t i = n; i-- > 0;) {
    cplx s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= m[i * n + k] * x[k];
    x[i] = s / m[i * n + i];
  }
  return x;
}

/// X A + A X = C as an n^2 x n^2 linear system on vec(X).
inline ComplexMatrix sylvester_by_kronecker(const ComplexMatrix& a, const ComplexMatrix& c) {
  const std::size_t n = a.n();
  const std::size_t m = n * n;
  std::vector<cplx> sys(m * m);
  std::vector<cplx> rhs(m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t row = i * n + j;
      rhs[row] = c(i, j);
      // (XA)_ij = sum_k X_ik A_kj ; (AX)_ij = sum_k A_ik X_kj
      for (std::size_t k = 0; k < n; ++k) {
        sys[row * m + (i * n + k)] += a(k, j);
        sys[row * m + (k * n + j)] += a(i, k);
      }
    }
  const auto x = solve_linear(std::move(sys), std::move(rhs));
  return ComplexMatrix(n, x);
}

/// exp(-i t A) by scaling and squaring of a truncated Taylor series.
inline ComplexMatrix expm_taylor(const ComplexMatrix& a, double t) {
  const std::size_t n = a.n();
  ComplexMatrix z = a * cplx(0.0, -t);
  double norm = 0.0;
  for (const auto& v : z.data()) norm += std::norm(v);
  norm = std::sqrt(norm);
  int squarings = 0;
  while (norm > 0.25) {
    norm *= 0.5;
    ++squarings;
  }
  z *= std::ldexp(1.0, -squarings);
  ComplexMatrix result = ComplexMatrix::identity(n);
  ComplexMatrix term = ComplexMatrix::identity(n);
  for (int k = 1; k <= 30; ++k) {
    term = term * z * (1.0 / k);
    result += term;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

}  // namespace oracle

namespace oracle {

/// Inverse by solving A x = e_k column by column.
inline ComplexMatrix inverse(const ComplexMatrix& a) {
  const std::size_t n = a.n();
  ComplexMatrix out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<cplx> rhs(n);
    rhs[k] = 1.0;
    const auto x = solve_linear(std::vector<cplx>(a.data().begin(), a.data().end()), rhs);
    for (std::size_t r = 0; r < n; ++r) out(r, k) = x[r];
  }
  return out;
}

/// 1/2 tr(X^dagger Q Y + Y^dagger Q X) written out entrywise.
inline double trace_form(const ComplexMatrix& q, const ComplexMatrix& x, const ComplexMatrix& y) {
  const std::size_t n = q.n();
  cplx s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        s += std::conj(x(j, i)) * q(j, k) * y(k, i) + std::conj(y(j, i)) * q(j, k) * x(k, i);
  return 0.5 * s.real();
}

}  // namespace oracle
