#include "qgeom/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qgeom {

TangentVector ham_field(const Hamiltonian& h, const Purification& w) {
  return TangentVector(w, cplx(0.0, -1.0) * (h.matrix() * w.matrix()));
}

Purification flow(const Hamiltonian& h, const Purification& w, double t) {
  if (t == 0.0) return w;
  return Purification::from_matrix(unitary_exp(h.eig(), t) * w.matrix());
}

FlowResult flow_series(const Hamiltonian& h, const Purification& w, std::span<const double> times) {
  if (!std::is_sorted(times.begin(), times.end()))
    throw Error(ErrorKind::InvalidArgument, "flow_series times must be sorted");
  FlowResult out;
  out.times.assign(times.begin(), times.end());
  out.points.reserve(times.size());
  out.projections.reserve(times.size());
  for (double t : times) {
    out.points.push_back(flow(h, w, t));
    out.projections.push_back(project(out.points.back()));
  }
  return out;
}

DensityMatrix evolve_exact(const Hamiltonian& h, const DensityMatrix& rho, double t) {
  if (t == 0.0) return rho;
  return DensityMatrix::from_matrix(evolve_matrix(h, rho.matrix(), t));
}

// Entry (i, j) in the eigenbasis picks up exp(i (E_j - E_i) t); the diagonal
// factor is exactly 1, so stationary states are reproduced bit for bit.
ComplexMatrix evolve_matrix(const Hamiltonian& h, const ComplexMatrix& m, double t) {
  require_same_dim(h.matrix(), m);
  const EigenDecomposition& eig = h.eig();
  const ComplexMatrix& u = eig.eigenvectors;
  ComplexMatrix in_basis = u.adjoint() * m * u;
  const std::size_t n = m.n();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) in_basis(i, j) *= std::polar(1.0, (eig.eigenvalues[j] - eig.eigenvalues[i]) * t);
  return u * in_basis * u.adjoint();
}

ComplexMatrix rk4_propagate(const Hamiltonian& h, ComplexMatrix rho, double t, double dt) {
  if (!(dt > 0.0)) throw Error(ErrorKind::InvalidArgument, "dt must be positive");
  if (!(t >= 0.0)) throw Error(ErrorKind::InvalidArgument, "t must be non-negative");
  if (dt * h.norm() > 0.5)
    throw Error(ErrorKind::StepTooLarge,
                "dt * ||H|| = " + std::to_string(dt * h.norm()) + " exceeds 0.5");

  const ComplexMatrix& hm = h.matrix();
  const cplx minus_i(0.0, -1.0);
  const auto rhs = [&](const ComplexMatrix& r) { return minus_i * commutator(hm, r); };

  const auto steps = static_cast<long long>(std::ceil(t / dt - 1e-9));
  for (long long k = 0; k < steps; ++k) {
    const double step = (k + 1 == steps) ? t - static_cast<double>(k) * dt : dt;
    const ComplexMatrix k1 = rhs(rho);
    const ComplexMatrix k2 = rhs(rho + k1 * (0.5 * step));
    const ComplexMatrix k3 = rhs(rho + k2 * (0.5 * step));
    const ComplexMatrix k4 = rhs(rho + k3 * step);
    rho += (k1 + 2.0 * k2 + 2.0 * k3 + k4) * (step / 6.0);
    rho = (rho + rho.adjoint()) * 0.5;
  }
  return rho;
}

DensityMatrix evolve_rk4(const Hamiltonian& h, const DensityMatrix& rho, double t, double dt) {
  return DensityMatrix::from_matrix(rk4_propagate(h, rho.matrix(), t, dt));
}

namespace {

double pushed_defect(const DynamicMetric& metric, const EigenDecomposition& generator,
                     const TangentVector& x, const TangentVector& y, double t) {
  const double before = g_total(metric, x, y);
  if (t == 0.0) return 0.0;
  const ComplexMatrix u = unitary_exp(generator, t);
  return std::abs(metric.ambient(u * x.matrix(), u * y.matrix()) - before);
}

}  // namespace

double isometry_defect(const DynamicMetric& metric, const TangentVector& x, const TangentVector& y,
                       double t) {
  return pushed_defect(metric, metric.hamiltonian().eig(), x, y, t);
}

double killing_defect(const DynamicMetric& metric, const ComplexMatrix& a, const TangentVector& x,
                      const TangentVector& y, double t) {
  return pushed_defect(metric, herm_eig(a), x, y, t);
}

double killing_derivative(const DynamicMetric& metric, const ComplexMatrix& a, const TangentVector& x,
                          const TangentVector& y, double eps) {
  const EigenDecomposition eig = herm_eig(a);
  const auto value = [&](double t) {
    const ComplexMatrix u = unitary_exp(eig, t);
    return metric.ambient(u * x.matrix(), u * y.matrix());
  };
  return std::abs((value(eps) - value(-eps)) / (2.0 * eps));
}

double geodesic_residual(const DynamicMetric& metric, const Purification& w, double t, int probes,
                         std::uint64_t seed) {
  const Hamiltonian& h = metric.hamiltonian();
  const Purification gamma = flow(h, w, t);
  const ComplexMatrix acceleration = -(h.matrix() * (h.matrix() * gamma.matrix()));
  double worst = 0.0;
  for (int k = 0; k < probes; ++k) {
    const TangentVector probe = random_tangent(gamma, seed + static_cast<std::uint64_t>(k));
    const double norm = frob_norm(probe.matrix());
    if (norm == 0.0) continue;
    worst = std::max(worst, std::abs(metric.ambient(acceleration, probe.matrix())) / norm);
  }
  return worst;
}

double geodesic_normal_component(const DynamicMetric& metric, const Purification& w, double t) {
  const Hamiltonian& h = metric.hamiltonian();
  const Purification gamma = flow(h, w, t);
  const ComplexMatrix acceleration = -(h.matrix() * (h.matrix() * gamma.matrix()));
  return std::abs(metric.ambient(acceleration, gamma.matrix()));
}

double unit_speed_defect(const DynamicMetric& metric, const ComplexMatrix& w) {
  const ComplexMatrix field = cplx(0.0, -1.0) * (metric.hamiltonian().matrix() * w);
  return std::abs(metric.ambient(field, field) - 1.0);
}

double unit_speed_defect(const DynamicMetric& metric, const Purification& w) {
  return unit_speed_defect(metric, w.matrix());
}

double projection_defect(const Hamiltonian& h, const Purification& w, double t) {
  const DensityMatrix lifted = project(flow(h, w, t));
  const DensityMatrix direct = evolve_exact(h, project(w), t);
  return frob_norm(lifted.matrix() - direct.matrix());
}

double von_neumann_derivative_defect(const Hamiltonian& h, const Purification& w, double t, double eps) {
  const auto rho_at = [&](double s) {
    const Purification p = flow(h, w, s);
    return p.matrix() * p.matrix().adjoint();
  };
  const ComplexMatrix numeric = (rho_at(t + eps) - rho_at(t - eps)) * (1.0 / (2.0 * eps));
  const ComplexMatrix exact = cplx(0.0, -1.0) * commutator(h.matrix(), rho_at(t));
  return frob_norm(numeric - exact);
}

double chord_defect(const DynamicMetric& metric, const Purification& w, const Purification& v, double t) {
  const Hamiltonian& h = metric.hamiltonian();
  return std::abs(chord_distance(metric, flow(h, w, t), flow(h, v, t)) - chord_distance(metric, w, v));
}

double pushed_gram_det(const DynamicMetric& metric, const Frame& f, double t) {
  const ComplexMatrix u = unitary_exp(metric.hamiltonian().eig(), t);
  std::vector<ComplexMatrix> pushed;
  pushed.reserve(f.vectors.size());
  for (const auto& v : f.vectors) pushed.push_back(u * v.matrix());
  return gram_det(metric, pushed);
}

}  // namespace qgeom
