#pragma once

#include <functional>
#include <vector>

#include "qgeom/matrix.hpp"

namespace qgeom {

/// Spectral data of a Hermitian matrix: A = U diag(lambda) U^dagger with the
/// eigenvalues ascending and the eigenvectors stored as the columns of U.
struct EigenDecomposition {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;

  ComplexMatrix reconstruct() const;
};

/// Hermiticity tolerance shared by every Hermitian precondition below.
inline constexpr double kHermitianTol = 1e-10;

/// Eigenvalues in [-kSqrtClip, 0) are clipped to zero before taking roots.
inline constexpr double kSqrtClip = 1e-12;

/// ||A - A^dagger|| / ||A|| (0 for the zero matrix).
double hermiticity_defect(const ComplexMatrix& a);

/// Cyclic complex Jacobi rotations. Throws NotHermitian when the relative
/// anti-Hermitian part exceeds kHermitianTol and NoConvergence after the
/// sweep cap.
EigenDecomposition herm_eig(const ComplexMatrix& a);

using SpectralFunction = std::function<cplx(double)>;

/// U diag(f(lambda)) U^dagger. f may throw Error(DomainError) for
/// eigenvalues outside its domain.
ComplexMatrix herm_fn(const EigenDecomposition& eig, const SpectralFunction& f);
ComplexMatrix herm_fn(const ComplexMatrix& a, const SpectralFunction& f);

ComplexMatrix herm_sqrt(const EigenDecomposition& eig);
ComplexMatrix herm_sqrt(const ComplexMatrix& a);
ComplexMatrix herm_inverse(const EigenDecomposition& eig);
ComplexMatrix herm_inverse(const ComplexMatrix& a);
/// A^p for integer p; negative powers require a nonsingular spectrum.
ComplexMatrix herm_power(const EigenDecomposition& eig, int p);
/// exp(-i t A)
ComplexMatrix unitary_exp(const EigenDecomposition& eig, double t);
ComplexMatrix unitary_exp(const ComplexMatrix& a, double t);

/// Solves X A + A X = C for Hermitian positive-definite A by diagonalizing
/// A = U L U^dagger and dividing U^dagger C U entrywise by l_i + l_j.
/// C must be Hermitian or anti-Hermitian; X inherits that symmetry exactly.
ComplexMatrix sylvester_solve(const EigenDecomposition& a_eig, const ComplexMatrix& c);
ComplexMatrix sylvester_solve(const ComplexMatrix& a, const ComplexMatrix& c);

/// tr(A^dagger B)
cplx frob_inner(const ComplexMatrix& a, const ComplexMatrix& b);
/// Re tr(A^dagger B): the Euclidean inner product on M(n, C) seen as R^{2n^2}.
double real_inner(const ComplexMatrix& a, const ComplexMatrix& b);
double frob_norm(const ComplexMatrix& a);
/// Largest |eigenvalue| of a Hermitian matrix.
double spectral_radius(const EigenDecomposition& eig);

/// Determinant of a small dense real matrix (row-major, m x m) by LU with
/// partial pivoting.
double real_determinant(std::vector<double> a, std::size_t m);

}  // namespace qgeom
