#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qgeom/states.hpp"

namespace qgeom {

/// Which operator weighs the trace form. Only InverseSquare is the dynamic
/// metric; InverseFirstPower exists for fault injection in the verifier.
enum class MetricWeight { InverseSquare, InverseFirstPower };

/// g_H(X, Y) = 1/2 tr(X^dagger H^-2 Y + Y^dagger H^-2 X) on the purification
/// sphere. Immutable once built; the weight operator is cached.
class DynamicMetric {
 public:
  explicit DynamicMetric(Hamiltonian h, MetricWeight weight = MetricWeight::InverseSquare);

  const Hamiltonian& hamiltonian() const noexcept { return h_; }
  const ComplexMatrix& weight() const noexcept { return weight_; }
  MetricWeight weight_kind() const noexcept { return kind_; }
  std::size_t n() const noexcept { return h_.n(); }

  /// The same trace form on arbitrary ambient matrices (no base point).
  double ambient(const ComplexMatrix& x, const ComplexMatrix& y) const;

 private:
  Hamiltonian h_;
  MetricWeight kind_;
  ComplexMatrix weight_;
};

/// Throws BasePointMismatch when X and Y live at different points.
double g_total(const DynamicMetric& metric, const TangentVector& x, const TangentVector& y);

struct TangentSplit {
  TangentVector vertical;
  TangentVector horizontal;
};

/// Decomposes X into the fibre direction W A (A anti-Hermitian) and its
/// g_H-orthogonal complement. A solves A M + M A = -K with M = W^dagger H^-2 W
/// and K = X^dagger H^-2 W - W^dagger H^-2 X. Throws SingularBase for
/// non-invertible W.
TangentSplit split(const DynamicMetric& metric, const TangentVector& x);

/// ||X^dagger H^-2 W - W^dagger H^-2 X||, zero exactly for horizontal X.
double horizontality_defect(const DynamicMetric& metric, const TangentVector& x);

/// Hermitian G_Y solving H^-1 Y H^-1 = G_Y R + R G_Y with R = H^-1 rho H^-1.
ComplexMatrix lift_generator(const Hamiltonian& h, const DensityMatrix& rho, const ComplexMatrix& y);

/// Horizontal lift H G_Y H^-1 W of a base tangent Y (Hermitian, traceless)
/// to a purification W of rho.
TangentVector horizontal_lift(const DynamicMetric& metric, const DensityMatrix& rho,
                              const ComplexMatrix& y, const Purification& w);

/// Induced metric on strictly positive densities: 1/2 tr(H^-1 G_Y H^-1 Z).
double base_metric(const DynamicMetric& metric, const DensityMatrix& rho, const ComplexMatrix& y,
                   const ComplexMatrix& z);

/// Bures metric 1/2 tr(G_Y Z) with Y = G_Y rho + rho G_Y.
double bures_metric(const DensityMatrix& rho, const ComplexMatrix& y, const ComplexMatrix& z);

/// Ambient g_H-length of W - V.
double chord_distance(const DynamicMetric& metric, const Purification& w, const Purification& v);

struct Frame {
  Purification base;
  std::vector<TangentVector> vectors;

  std::vector<ComplexMatrix> matrices() const;
};

/// g_H-orthonormal basis of T_W S (2n^2 - 1 vectors), Gram-Schmidt applied to
/// the real coordinate directions of M(n, C) in a seeded order after removing
/// their radial components.
Frame frame(const DynamicMetric& metric, const Purification& w, std::uint64_t seed);

/// Row-major m x m matrix [g_H(v_i, v_j)].
std::vector<double> gram_matrix(const DynamicMetric& metric, std::span<const ComplexMatrix> vectors);
double gram_det(const DynamicMetric& metric, std::span<const ComplexMatrix> vectors);

}  // namespace qgeom
