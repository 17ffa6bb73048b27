#include "qgeom/states.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace qgeom {

DensityDiagnostics diagnose_density(const ComplexMatrix& rho) {
  if (!rho.all_finite()) throw Error(ErrorKind::NonFinite, "density has NaN or Inf entries");
  DensityDiagnostics d;
  d.hermiticity = frob_norm(rho - rho.adjoint());
  d.hermitian = d.hermiticity <= kStateTol;
  const ComplexMatrix sym = (rho + rho.adjoint()) * 0.5;
  d.min_eigenvalue = herm_eig(sym).eigenvalues.front();
  d.positive_semidefinite = d.min_eigenvalue >= -kStateTol;
  d.strictly_positive = d.min_eigenvalue >= kStateTol;
  d.trace_error = std::abs(rho.trace() - cplx(1.0));
  d.unit_trace = d.trace_error <= kStateTol;
  return d;
}

DensityMatrix DensityMatrix::from_matrix(const ComplexMatrix& rho) {
  const DensityDiagnostics d = diagnose_density(rho);
  if (!d.hermitian)
    throw Error(ErrorKind::InvalidDensity,
                "hermitian invariant violated: ||rho - rho^dagger|| = " + std::to_string(d.hermiticity));
  if (!d.positive_semidefinite)
    throw Error(ErrorKind::InvalidDensity,
                "psd invariant violated: min eigenvalue = " + std::to_string(d.min_eigenvalue));
  if (!d.unit_trace)
    throw Error(ErrorKind::InvalidDensity,
                "trace invariant violated: |tr(rho) - 1| = " + std::to_string(d.trace_error));
  return DensityMatrix((rho + rho.adjoint()) * 0.5, d.min_eigenvalue);
}

namespace {

double smallest_singular_value(const ComplexMatrix& w) {
  const double l = herm_eig(w.adjoint() * w).eigenvalues.front();
  return std::sqrt(std::max(l, 0.0));
}

}  // namespace

Purification Purification::from_matrix(ComplexMatrix w) {
  if (!w.all_finite()) throw Error(ErrorKind::NonFinite, "purification has NaN or Inf entries");
  const double norm2 = real_inner(w, w);
  if (std::abs(norm2 - 1.0) > kStateTol)
    throw Error(ErrorKind::InvalidPurification,
                "tr(W W^dagger) = " + std::to_string(norm2) + ", expected 1");
  const double smin = smallest_singular_value(w);
  return Purification(std::move(w), smin);
}

Hamiltonian::Hamiltonian(const ComplexMatrix& h, std::optional<double> shift)
    : raw_(h), h_(h), eig_(herm_eig(h)), inv_(h.n()), inv2_(h.n()) {
  const auto& l = eig_.eigenvalues;
  const auto min_abs = [](const std::vector<double>& v) {
    double m = std::abs(v.front());
    for (double x : v) m = std::min(m, std::abs(x));
    return m;
  };
  if (shift) {
    shift_ = *shift;
  } else if (min_abs(l) < kStateTol) {
    shift_ = 1.0 + std::abs(l.front());
  }
  if (shift_ != 0.0) {
    h_ = raw_ + ComplexMatrix::identity(raw_.n()) * shift_;
    // Shifting by c I moves every eigenvalue by c and keeps the eigenvectors.
    for (double& x : eig_.eigenvalues) x += shift_;
  }
  if (min_abs(eig_.eigenvalues) < kStateTol)
    throw Error(ErrorKind::SingularHamiltonian,
                "Hamiltonian (after shift " + std::to_string(shift_) + ") is not invertible");
  h_ = (h_ + h_.adjoint()) * 0.5;
  inv_ = herm_power(eig_, -1);
  inv2_ = herm_power(eig_, -2);
}

TangentVector::TangentVector(Purification base, ComplexMatrix x, double scale)
    : base_(std::move(base)), x_(std::move(x)) {
  require_same_dim(base_.matrix(), x_);
  const double radial = std::abs(real_inner(base_.matrix(), x_));
  if (radial > 1e-9 * std::max(frob_norm(x_), scale) + 1e-300)
    throw Error(ErrorKind::NotTangent,
                "|Re tr(W^dagger X)| = " + std::to_string(radial) + " exceeds tangency tolerance");
}

DensityMatrix project(const Purification& w) {
  return DensityMatrix::from_matrix(w.matrix() * w.matrix().adjoint());
}

Purification section(const DensityMatrix& rho, bool require_invertible) {
  if (require_invertible && !rho.strictly_positive())
    throw Error(ErrorKind::NotStrictlyPositive,
                "density has min eigenvalue " + std::to_string(rho.min_eigenvalue()));
  return Purification::from_matrix(herm_sqrt(rho.matrix()));
}

Purification fibre_act(const Purification& w, const ComplexMatrix& u) {
  require_same_dim(w.matrix(), u);
  const double defect = frob_norm(u.adjoint() * u - ComplexMatrix::identity(u.n()));
  if (defect > kStateTol)
    throw Error(ErrorKind::NotUnitary, "||u^dagger u - I|| = " + std::to_string(defect));
  return Purification::from_matrix(w.matrix() * u);
}

// ---------------------------------------------------------------------------

namespace {

// Each generator salts the user seed so that, e.g., random_density(n, s) and
// random_purification(n, s) do not share a stream.
std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t salt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(salt)};
  return std::mt19937_64(seq);
}

ComplexMatrix gaussian_from(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(n);
  for (auto& z : g.data()) {
    const double re = normal(rng);
    const double im = normal(rng);
    z = cplx(re, im);
  }
  return g;
}

}  // namespace

ComplexMatrix gaussian_matrix(std::size_t n, std::uint64_t seed) {
  auto rng = make_engine(seed, 1);
  return gaussian_from(n, rng);
}

ComplexMatrix random_hermitian(std::size_t n, std::uint64_t seed) {
  auto rng = make_engine(seed, 2);
  const ComplexMatrix g = gaussian_from(n, rng);
  return (g + g.adjoint()) * 0.5;
}

ComplexMatrix random_unitary(std::size_t n, std::uint64_t seed) {
  auto rng = make_engine(seed, 3);
  const ComplexMatrix g = gaussian_from(n, rng);
  return unitary_exp((g + g.adjoint()) * 0.5, 1.0);
}

ComplexMatrix random_hamiltonian_matrix(std::size_t n, std::uint64_t seed) {
  auto rng = make_engine(seed, 4);
  std::uniform_real_distribution<double> mag(0.5, 3.0);
  std::bernoulli_distribution negative(0.5);
  std::vector<double> spectrum(n);
  for (double& x : spectrum) {
    x = mag(rng);
    if (negative(rng)) x = -x;
  }
  const ComplexMatrix g = gaussian_from(n, rng);
  const ComplexMatrix u = unitary_exp((g + g.adjoint()) * 0.5, 1.0);
  const ComplexMatrix h = u * ComplexMatrix::diagonal(spectrum) * u.adjoint();
  return (h + h.adjoint()) * 0.5;
}

DensityMatrix random_density(std::size_t n, std::uint64_t seed, bool strictly_positive) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "n must be >= 1");
  auto rng = make_engine(seed, 5);
  const ComplexMatrix g = gaussian_from(n, rng);
  ComplexMatrix m = g * g.adjoint();
  m *= 1.0 / m.trace().real();
  if (strictly_positive) m += ComplexMatrix::identity(n) * 1e-3;
  m *= 1.0 / m.trace().real();
  return DensityMatrix::from_matrix((m + m.adjoint()) * 0.5);
}

Purification random_purification(std::size_t n, std::uint64_t seed) {
  auto rng = make_engine(seed, 6);
  ComplexMatrix g = gaussian_from(n, rng);
  g *= 1.0 / frob_norm(g);
  return Purification::from_matrix(std::move(g));
}

TangentVector random_tangent(const Purification& w, std::uint64_t seed) {
  auto rng = make_engine(seed, 7);
  const ComplexMatrix g = gaussian_from(w.n(), rng);
  const ComplexMatrix& wm = w.matrix();
  return TangentVector(w, g - wm * (real_inner(wm, g) / real_inner(wm, wm)));
}

}  // namespace qgeom
