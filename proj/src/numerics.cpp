#include "qgeom/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace qgeom {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::SingularPencil: return "SingularPencil";
    case ErrorKind::InvalidDensity: return "InvalidDensity";
    case ErrorKind::NotStrictlyPositive: return "NotStrictlyPositive";
    case ErrorKind::InvalidPurification: return "InvalidPurification";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::SingularHamiltonian: return "SingularHamiltonian";
    case ErrorKind::NotTangent: return "NotTangent";
    case ErrorKind::BasePointMismatch: return "BasePointMismatch";
    case ErrorKind::BaseMismatch: return "BaseMismatch";
    case ErrorKind::SingularBase: return "SingularBase";
    case ErrorKind::DegenerateFrame: return "DegenerateFrame";
    case ErrorKind::StepTooLarge: return "StepTooLarge";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows)
    : n_(rows.size()) {
  if (n_ == 0) throw Error(ErrorKind::DimensionMismatch, "matrix dimension must be >= 1");
  data_.reserve(n_ * n_);
  for (const auto& row : rows) {
    if (row.size() != n_) throw Error(ErrorKind::DimensionMismatch, "matrix must be square");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> d) {
  ComplexMatrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

cplx ComplexMatrix::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

bool ComplexMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const cplx& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  require_same_dim(*this, o);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  require_same_dim(*this, o);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (auto& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b);
  const std::size_t n = a.n();
  ComplexMatrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx(0.0)) continue;
      for (std::size_t j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

// ---------------------------------------------------------------------------
// Inner products

cplx frob_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b);
  cplx s = 0.0;
  auto da = a.data();
  auto db = b.data();
  for (std::size_t k = 0; k < da.size(); ++k) s += std::conj(da[k]) * db[k];
  return s;
}

double real_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b);
  double s = 0.0;
  auto da = a.data();
  auto db = b.data();
  for (std::size_t k = 0; k < da.size(); ++k)
    s += da[k].real() * db[k].real() + da[k].imag() * db[k].imag();
  return s;
}

double frob_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (const auto& z : a.data()) s += std::norm(z);
  return std::sqrt(s);
}

double hermiticity_defect(const ComplexMatrix& a) {
  const double norm = frob_norm(a);
  if (norm == 0.0) return 0.0;
  return frob_norm(a - a.adjoint()) / norm;
}

double spectral_radius(const EigenDecomposition& eig) {
  double r = 0.0;
  for (double l : eig.eigenvalues) r = std::max(r, std::abs(l));
  return r;
}

// ---------------------------------------------------------------------------
// Jacobi eigensolver

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalTol = 1e-15;

// Applies A <- J^dagger A J and V <- V J for the unitary J acting on the
// (p, q) plane that annihilates A(p, q).
void rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const std::size_t n = a.n();
  const cplx apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;

  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double theta = (aqq - app) / (2.0 * mag);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
    if (theta < 0.0) t = -t;
  }
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  const cplx phase_conj = std::conj(apq / mag);

  // J = diag(1, e^{-i alpha}) * [[c, s], [-s, c]]
  const cplx jpp = c;
  const cplx jpq = s;
  const cplx jqp = -s * phase_conj;
  const cplx jqq = c * phase_conj;

  for (std::size_t k = 0; k < n; ++k) {
    const cplx akp = a(k, p);
    const cplx akq = a(k, q);
    a(k, p) = akp * jpp + akq * jqp;
    a(k, q) = akp * jpq + akq * jqq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const cplx apk = a(p, k);
    const cplx aqk = a(q, k);
    a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
    a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  for (std::size_t k = 0; k < n; ++k) {
    const cplx vkp = v(k, p);
    const cplx vkq = v(k, q);
    v(k, p) = vkp * jpp + vkq * jqp;
    v(k, q) = vkp * jpq + vkq * jqq;
  }
}

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.n(); ++i)
    for (std::size_t j = 0; j < a.n(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

}  // namespace

EigenDecomposition herm_eig(const ComplexMatrix& input) {
  if (!input.all_finite()) throw Error(ErrorKind::NonFinite, "matrix has NaN or Inf entries");
  if (hermiticity_defect(input) > kHermitianTol)
    throw Error(ErrorKind::NotHermitian, "herm_eig requires a Hermitian matrix");

  const std::size_t n = input.n();
  ComplexMatrix a = (input + input.adjoint()) * 0.5;
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = frob_norm(a);

  bool converged = scale == 0.0;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    if (off_diagonal_norm(a) <= kOffDiagonalTol * scale) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) rotate(a, v, p, q);
  }
  if (!converged && off_diagonal_norm(a) > kOffDiagonalTol * scale)
    throw Error(ErrorKind::NoConvergence, "Jacobi sweeps exceeded the iteration cap");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() < a(j, j).real();
  });

  EigenDecomposition out{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t col = 0; col < n; ++col) {
    const std::size_t src = order[col];
    out.eigenvalues[col] = a(src, src).real();
    for (std::size_t row = 0; row < n; ++row) out.eigenvectors(row, col) = v(row, src);
  }
  return out;
}

ComplexMatrix EigenDecomposition::reconstruct() const {
  return herm_fn(*this, [](double l) { return cplx(l); });
}

// ---------------------------------------------------------------------------
// Matrix functions

ComplexMatrix herm_fn(const EigenDecomposition& eig, const SpectralFunction& f) {
  const auto& u = eig.eigenvectors;
  const std::size_t n = u.n();
  std::vector<cplx> fl(n);
  for (std::size_t k = 0; k < n; ++k) fl[k] = f(eig.eigenvalues[k]);

  ComplexMatrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += u(i, k) * fl[k] * std::conj(u(j, k));
      r(i, j) = s;
    }
  return r;
}

ComplexMatrix herm_fn(const ComplexMatrix& a, const SpectralFunction& f) {
  return herm_fn(herm_eig(a), f);
}

ComplexMatrix herm_sqrt(const EigenDecomposition& eig) {
  return herm_fn(eig, [](double l) -> cplx {
    if (l < -kSqrtClip)
      throw Error(ErrorKind::DomainError,
                  "square root of a matrix with eigenvalue " + std::to_string(l));
    return l < 0.0 ? 0.0 : std::sqrt(l);
  });
}

ComplexMatrix herm_sqrt(const ComplexMatrix& a) { return herm_sqrt(herm_eig(a)); }

ComplexMatrix herm_power(const EigenDecomposition& eig, int p) {
  const double floor = 1e-14 * std::max(1.0, spectral_radius(eig));
  return herm_fn(eig, [p, floor](double l) -> cplx {
    if (p < 0 && std::abs(l) <= floor)
      throw Error(ErrorKind::DomainError, "negative power of a singular matrix");
    return std::pow(l, p);
  });
}

ComplexMatrix herm_inverse(const EigenDecomposition& eig) { return herm_power(eig, -1); }
ComplexMatrix herm_inverse(const ComplexMatrix& a) { return herm_inverse(herm_eig(a)); }

ComplexMatrix unitary_exp(const EigenDecomposition& eig, double t) {
  return herm_fn(eig, [t](double l) { return std::polar(1.0, -l * t); });
}

ComplexMatrix unitary_exp(const ComplexMatrix& a, double t) { return unitary_exp(herm_eig(a), t); }

// ---------------------------------------------------------------------------
// Sylvester

ComplexMatrix sylvester_solve(const EigenDecomposition& a_eig, const ComplexMatrix& c) {
  const auto& u = a_eig.eigenvectors;
  require_same_dim(u, c);
  const std::size_t n = c.n();

  const double c_norm = frob_norm(c);
  double symmetry = 1.0;
  if (c_norm > 0.0) {
    const ComplexMatrix ch = c.adjoint();
    if (frob_norm(c - ch) <= kHermitianTol * c_norm) {
      symmetry = 1.0;
    } else if (frob_norm(c + ch) <= kHermitianTol * c_norm) {
      symmetry = -1.0;
    } else {
      throw Error(ErrorKind::NotHermitian,
                  "Sylvester right-hand side must be Hermitian or anti-Hermitian");
    }
  }

  const auto& l = a_eig.eigenvalues;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (l[i] + l[j] <= 1e-12)
        throw Error(ErrorKind::SingularPencil, "eigenvalue pair sums to <= 1e-12");

  const ComplexMatrix ud = u.adjoint();
  ComplexMatrix ct = ud * c * u;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) ct(i, j) /= (l[i] + l[j]);
  ComplexMatrix x = u * ct * ud;
  return (x + symmetry * x.adjoint()) * 0.5;
}

ComplexMatrix sylvester_solve(const ComplexMatrix& a, const ComplexMatrix& c) {
  return sylvester_solve(herm_eig(a), c);
}

// ---------------------------------------------------------------------------

double real_determinant(std::vector<double> a, std::size_t m) {
  if (a.size() != m * m) throw Error(ErrorKind::DimensionMismatch, "determinant input size");
  double det = 1.0;
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < m; ++r)
      if (std::abs(a[r * m + col]) > std::abs(a[pivot * m + col])) pivot = r;
    if (a[pivot * m + col] == 0.0) return 0.0;
    if (pivot != col) {
      for (std::size_t k = 0; k < m; ++k) std::swap(a[pivot * m + k], a[col * m + k]);
      det = -det;
    }
    const double d = a[col * m + col];
    det *= d;
    for (std::size_t r = col + 1; r < m; ++r) {
      const double factor = a[r * m + col] / d;
      if (factor == 0.0) continue;
      for (std::size_t k = col; k < m; ++k) a[r * m + k] -= factor * a[col * m + k];
    }
  }
  return det;
}

}  // namespace qgeom
