#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qgeom/metric.hpp"

namespace qgeom {

struct FlowResult {
  std::vector<double> times;
  std::vector<Purification> points;
  std::vector<DensityMatrix> projections;
};

/// h_W = -i H W
TangentVector ham_field(const Hamiltonian& h, const Purification& w);

/// phi_t(W) = exp(-i H t) W
Purification flow(const Hamiltonian& h, const Purification& w, double t);

/// Samples the integral curve through W at the given times (sorted ascending).
FlowResult flow_series(const Hamiltonian& h, const Purification& w, std::span<const double> times);

/// exp(-i H t) rho exp(i H t)
DensityMatrix evolve_exact(const Hamiltonian& h, const DensityMatrix& rho, double t);

/// exp(-i H t) M exp(i H t) for an arbitrary matrix M.
ComplexMatrix evolve_matrix(const Hamiltonian& h, const ComplexMatrix& m, double t);

/// Classical RK4 on d rho/dt = -i [H, rho] with step dt (the last step is
/// shortened to land on t), re-Hermitized after each step. Throws
/// StepTooLarge when dt ||H|| > 0.5.
DensityMatrix evolve_rk4(const Hamiltonian& h, const DensityMatrix& rho, double t, double dt);

/// Same integrator on a raw matrix, without density validation of the result.
ComplexMatrix rk4_propagate(const Hamiltonian& h, ComplexMatrix rho, double t, double dt);

/// |g(e^{-iHt} X, e^{-iHt} Y) - g(X, Y)|
double isometry_defect(const DynamicMetric& metric, const TangentVector& x, const TangentVector& y,
                       double t);

/// |g(e^{-iAt} X, e^{-iAt} Y) - g(X, Y)| for the field -i A W of a Hermitian A.
double killing_defect(const DynamicMetric& metric, const ComplexMatrix& a, const TangentVector& x,
                      const TangentVector& y, double t);

/// Central difference (step eps) of t -> g(e^{-iAt} X, e^{-iAt} Y) at t = 0.
double killing_derivative(const DynamicMetric& metric, const ComplexMatrix& a, const TangentVector& x,
                          const TangentVector& y, double eps = 1e-5);

/// Largest |g(gamma'', X)| over seeded unit-Frobenius tangent probes X at
/// gamma(t) = exp(-iHt) W, with gamma'' = -H^2 gamma evaluated analytically.
double geodesic_residual(const DynamicMetric& metric, const Purification& w, double t, int probes,
                         std::uint64_t seed);

/// |g(gamma'', gamma)| at gamma(t): the normal part of the acceleration,
/// equal to tr(gamma^dagger gamma) = 1 for the dynamic metric.
double geodesic_normal_component(const DynamicMetric& metric, const Purification& w, double t);

/// |g(h_W, h_W) - 1|
double unit_speed_defect(const DynamicMetric& metric, const Purification& w);
/// Unvalidated ambient variant (used to probe points off the sphere).
double unit_speed_defect(const DynamicMetric& metric, const ComplexMatrix& w);

/// ||pi(phi_t W) - evolve_exact(pi(W), t)||
double projection_defect(const Hamiltonian& h, const Purification& w, double t);

/// || (pi(phi_{t+eps} W) - pi(phi_{t-eps} W)) / (2 eps) + i [H, pi(phi_t W)] ||
double von_neumann_derivative_defect(const Hamiltonian& h, const Purification& w, double t,
                                     double eps = 1e-5);

/// |chord(phi_t W, phi_t V) - chord(W, V)|
double chord_defect(const DynamicMetric& metric, const Purification& w, const Purification& v, double t);

/// Gram determinant of the frame vectors pushed forward by exp(-iHt).
double pushed_gram_det(const DynamicMetric& metric, const Frame& f, double t);

}  // namespace qgeom
