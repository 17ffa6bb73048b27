#include "qgeom/metric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace qgeom {

namespace {

constexpr double kBaseTol = 1e-10;

void require_base_tangent(const DensityMatrix& rho, const ComplexMatrix& y, const char* name) {
  require_same_dim(rho.matrix(), y);
  if (frob_norm(y - y.adjoint()) > kBaseTol)
    throw Error(ErrorKind::NotHermitian, std::string(name) + " must be Hermitian");
  if (std::abs(y.trace()) > kBaseTol)
    throw Error(ErrorKind::NotTangent, std::string(name) + " must be traceless");
}

void require_interior(const DensityMatrix& rho) {
  if (!rho.strictly_positive())
    throw Error(ErrorKind::NotStrictlyPositive, "metric evaluation requires rho > 0");
}

}  // namespace

DynamicMetric::DynamicMetric(Hamiltonian h, MetricWeight weight)
    : h_(std::move(h)),
      kind_(weight),
      weight_(weight == MetricWeight::InverseSquare ? h_.inverse_squared() : h_.inverse()) {}

double DynamicMetric::ambient(const ComplexMatrix& x, const ComplexMatrix& y) const {
  // weight_ is Hermitian, so the symmetrized trace equals Re tr(X^dagger G Y).
  return real_inner(x, weight_ * y);
}

double g_total(const DynamicMetric& metric, const TangentVector& x, const TangentVector& y) {
  if (frob_norm(x.base().matrix() - y.base().matrix()) > 1e-12)
    throw Error(ErrorKind::BasePointMismatch, "tangent vectors are attached to different points");
  return metric.ambient(x.matrix(), y.matrix());
}

double horizontality_defect(const DynamicMetric& metric, const TangentVector& x) {
  const ComplexMatrix& w = x.base().matrix();
  const ComplexMatrix& g = metric.weight();
  return frob_norm(x.matrix().adjoint() * g * w - w.adjoint() * g * x.matrix());
}

TangentSplit split(const DynamicMetric& metric, const TangentVector& x) {
  const Purification& base = x.base();
  if (!base.invertible())
    throw Error(ErrorKind::SingularBase, "vertical/horizontal split needs an invertible base point");
  const ComplexMatrix& w = base.matrix();
  const ComplexMatrix& g = metric.weight();
  const ComplexMatrix gw = g * w;
  const ComplexMatrix m = w.adjoint() * gw;
  const ComplexMatrix k = x.matrix().adjoint() * gw - gw.adjoint() * x.matrix();
  const ComplexMatrix a = sylvester_solve((m + m.adjoint()) * 0.5, -k);
  ComplexMatrix vertical = w * a;
  ComplexMatrix horizontal = x.matrix() - vertical;
  const double scale = frob_norm(x.matrix());
  return TangentSplit{TangentVector(base, std::move(vertical), scale),
                      TangentVector(base, std::move(horizontal), scale)};
}

ComplexMatrix lift_generator(const Hamiltonian& h, const DensityMatrix& rho, const ComplexMatrix& y) {
  const ComplexMatrix& hinv = h.inverse();
  const ComplexMatrix r = hinv * rho.matrix() * hinv;
  const ComplexMatrix c = hinv * y * hinv;
  return sylvester_solve((r + r.adjoint()) * 0.5, (c + c.adjoint()) * 0.5);
}

TangentVector horizontal_lift(const DynamicMetric& metric, const DensityMatrix& rho,
                              const ComplexMatrix& y, const Purification& w) {
  require_interior(rho);
  require_base_tangent(rho, y, "Y");
  require_same_dim(rho.matrix(), w.matrix());
  if (frob_norm(w.matrix() * w.matrix().adjoint() - rho.matrix()) > kBaseTol)
    throw Error(ErrorKind::BaseMismatch, "W is not a purification of rho");
  const Hamiltonian& h = metric.hamiltonian();
  const ComplexMatrix gy = lift_generator(h, rho, y);
  return TangentVector(w, h.matrix() * gy * h.inverse() * w.matrix());
}

double base_metric(const DynamicMetric& metric, const DensityMatrix& rho, const ComplexMatrix& y,
                   const ComplexMatrix& z) {
  require_interior(rho);
  require_base_tangent(rho, y, "Y");
  require_base_tangent(rho, z, "Z");
  const Hamiltonian& h = metric.hamiltonian();
  const ComplexMatrix gy = lift_generator(h, rho, y);
  return 0.5 * (h.inverse() * gy * h.inverse() * z).trace().real();
}

double bures_metric(const DensityMatrix& rho, const ComplexMatrix& y, const ComplexMatrix& z) {
  require_interior(rho);
  require_base_tangent(rho, y, "Y");
  require_base_tangent(rho, z, "Z");
  const ComplexMatrix gy = sylvester_solve(rho.matrix(), (y + y.adjoint()) * 0.5);
  return 0.5 * (gy * z).trace().real();
}

double chord_distance(const DynamicMetric& metric, const Purification& w, const Purification& v) {
  const ComplexMatrix d = w.matrix() - v.matrix();
  return std::sqrt(std::max(0.0, metric.ambient(d, d)));
}

std::vector<ComplexMatrix> Frame::matrices() const {
  std::vector<ComplexMatrix> out;
  out.reserve(vectors.size());
  for (const auto& v : vectors) out.push_back(v.matrix());
  return out;
}

Frame frame(const DynamicMetric& metric, const Purification& w, std::uint64_t seed) {
  if (!w.invertible()) throw Error(ErrorKind::SingularBase, "frame needs an invertible base point");
  const std::size_t n = w.n();
  const std::size_t target = 2 * n * n - 1;
  const ComplexMatrix& wm = w.matrix();
  const double wnorm2 = real_inner(wm, wm);

  std::vector<std::size_t> order(2 * n * n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<ComplexMatrix> basis;
  basis.reserve(target);
  for (std::size_t idx : order) {
    if (basis.size() == target) break;
    ComplexMatrix c(n);
    const std::size_t entry = idx / 2;
    c(entry / n, entry % n) = (idx % 2 == 0) ? cplx(1.0) : cplx(0.0, 1.0);
    c -= wm * (real_inner(wm, c) / wnorm2);

    const double initial = std::sqrt(metric.ambient(c, c));
    // Two passes of modified Gram-Schmidt keep orthogonality at round-off level.
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& e : basis) c -= e * metric.ambient(e, c);
    const double norm = std::sqrt(std::max(0.0, metric.ambient(c, c)));
    // The 2n^2 projected directions span a (2n^2 - 1)-dimensional space, so
    // exactly one candidate collapses; skip it.
    if (norm < 1e-12 || norm < 1e-10 * initial) continue;
    c *= 1.0 / norm;
    basis.push_back(std::move(c));
  }
  if (basis.size() != target)
    throw Error(ErrorKind::DegenerateFrame,
                "Gram-Schmidt produced " + std::to_string(basis.size()) + " of " +
                    std::to_string(target) + " vectors");

  Frame out{w, {}};
  out.vectors.reserve(target);
  for (auto& b : basis) out.vectors.emplace_back(w, std::move(b));
  return out;
}

std::vector<double> gram_matrix(const DynamicMetric& metric, std::span<const ComplexMatrix> vectors) {
  const std::size_t m = vectors.size();
  std::vector<double> g(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    const ComplexMatrix wi = metric.weight() * vectors[i];
    for (std::size_t j = i; j < m; ++j) {
      // real_inner(vectors[j], weight * vectors[i]) == g(v_i, v_j) for Hermitian weight.
      const double value = real_inner(vectors[j], wi);
      g[i * m + j] = value;
      g[j * m + i] = value;
    }
  }
  return g;
}

double gram_det(const DynamicMetric& metric, std::span<const ComplexMatrix> vectors) {
  if (vectors.empty()) return 1.0;
  return real_determinant(gram_matrix(metric, vectors), vectors.size());
}

}  // namespace qgeom
