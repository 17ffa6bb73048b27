#pragma once

#include <cstdint>
#include <optional>

#include "qgeom/numerics.hpp"

namespace qgeom {

/// Uniform tolerance for density, purification and Hamiltonian validation.
inline constexpr double kStateTol = 1e-10;

struct DensityDiagnostics {
  double hermiticity = 0.0;    // ||rho - rho^dagger||
  double min_eigenvalue = 0.0; // of the Hermitian part
  double trace_error = 0.0;    // |tr(rho) - 1|
  bool hermitian = false;
  bool positive_semidefinite = false;
  bool unit_trace = false;
  bool strictly_positive = false;

  bool valid() const { return hermitian && positive_semidefinite && unit_trace; }
};

DensityDiagnostics diagnose_density(const ComplexMatrix& rho);

/// Hermitian, positive semidefinite, unit-trace matrix. strictly_positive()
/// marks membership in the interior P+ (min eigenvalue >= kStateTol).
class DensityMatrix {
 public:
  /// Throws InvalidDensity naming the first violated invariant.
  static DensityMatrix from_matrix(const ComplexMatrix& rho);

  const ComplexMatrix& matrix() const noexcept { return rho_; }
  std::size_t n() const noexcept { return rho_.n(); }
  bool strictly_positive() const noexcept { return strictly_positive_; }
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

 private:
  DensityMatrix(ComplexMatrix rho, double min_eig)
      : rho_(std::move(rho)), min_eigenvalue_(min_eig), strictly_positive_(min_eig >= kStateTol) {}

  ComplexMatrix rho_;
  double min_eigenvalue_;
  bool strictly_positive_;
};

/// Point of the purification sphere tr(W W^dagger) = 1. invertible() marks
/// membership in the bundle total space (smallest singular value >= 1e-10).
class Purification {
 public:
  /// Throws InvalidPurification when |tr(W W^dagger) - 1| > kStateTol.
  static Purification from_matrix(ComplexMatrix w);

  const ComplexMatrix& matrix() const noexcept { return w_; }
  std::size_t n() const noexcept { return w_.n(); }
  bool invertible() const noexcept { return min_singular_value_ >= kStateTol; }
  double min_singular_value() const noexcept { return min_singular_value_; }

 private:
  Purification(ComplexMatrix w, double smin) : w_(std::move(w)), min_singular_value_(smin) {}

  ComplexMatrix w_;
  double min_singular_value_;
};

/// Invertible Hermitian operator with cached spectral data.
///
/// When constructed without an explicit shift and the smallest |eigenvalue|
/// is below kStateTol, H is replaced by H + c I with c = 1 + |lambda_min|
/// (lambda_min the smallest eigenvalue). An explicit shift c is always
/// applied as given; the shifted operator must still be invertible.
class Hamiltonian {
 public:
  explicit Hamiltonian(const ComplexMatrix& h, std::optional<double> shift = std::nullopt);

  std::size_t n() const noexcept { return h_.n(); }
  /// The operator actually used (shift included).
  const ComplexMatrix& matrix() const noexcept { return h_; }
  const ComplexMatrix& unshifted() const noexcept { return raw_; }
  double shift() const noexcept { return shift_; }
  const EigenDecomposition& eig() const noexcept { return eig_; }
  const ComplexMatrix& inverse() const noexcept { return inv_; }
  const ComplexMatrix& inverse_squared() const noexcept { return inv2_; }
  double norm() const noexcept { return spectral_radius(eig_); }

 private:
  ComplexMatrix raw_;
  ComplexMatrix h_;
  double shift_ = 0.0;
  EigenDecomposition eig_;
  ComplexMatrix inv_;
  ComplexMatrix inv2_;
};

/// Matrix X at a base point W, tangent to the sphere: Re tr(W^dagger X) = 0.
class TangentVector {
 public:
  /// Throws NotTangent when |Re tr(W^dagger X)| > 1e-9 max(||X||, scale).
  /// Pieces cut from a larger vector pass its norm as the scale.
  TangentVector(Purification base, ComplexMatrix x, double scale = 0.0);

  const Purification& base() const noexcept { return base_; }
  const ComplexMatrix& matrix() const noexcept { return x_; }

 private:
  Purification base_;
  ComplexMatrix x_;
};

/// pi(W) = W W^dagger
DensityMatrix project(const Purification& w);

/// tau(rho) = sqrt(rho), the unique PSD square root. With require_invertible
/// a boundary state (zero eigenvalue) raises NotStrictlyPositive.
Purification section(const DensityMatrix& rho, bool require_invertible = true);

/// Right action W -> W u of the unitary group. Throws NotUnitary.
Purification fibre_act(const Purification& w, const ComplexMatrix& u);

// ---------------------------------------------------------------------------
// Seeded test-data generators. Deterministic per seed on a given platform.

/// Complex Ginibre matrix: real and imaginary parts i.i.d. N(0, 1).
ComplexMatrix gaussian_matrix(std::size_t n, std::uint64_t seed);
ComplexMatrix random_hermitian(std::size_t n, std::uint64_t seed);
ComplexMatrix random_unitary(std::size_t n, std::uint64_t seed);
/// Random eigenbasis with eigenvalue magnitudes in [0.5, 3] and random signs.
ComplexMatrix random_hamiltonian_matrix(std::size_t n, std::uint64_t seed);

/// G G^dagger / tr(G G^dagger); the strictly positive variant adds 1e-3 I
/// before renormalizing.
DensityMatrix random_density(std::size_t n, std::uint64_t seed, bool strictly_positive);
/// Normalized Ginibre matrix (invertible with probability one).
Purification random_purification(std::size_t n, std::uint64_t seed);
/// G minus its Euclidean component along W.
TangentVector random_tangent(const Purification& w, std::uint64_t seed);

}  // namespace qgeom
