#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "qgeom/numerics.hpp"
#include "qgeom/states.hpp"

using namespace qgeom;
using oracle::max_abs_diff;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no qgeom::Error thrown");
  return ErrorKind::InvalidArgument;
}

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

}  // namespace

TEST_CASE("DensityMatrix validation names the violated invariant") {
  CHECK_NOTHROW(DensityMatrix::from_matrix(ComplexMatrix::diagonal({0.5, 0.5})));
  CHECK(kind_of([] { DensityMatrix::from_matrix(ComplexMatrix::diagonal({0.6, 0.6})); }) ==
        ErrorKind::InvalidDensity);
  try {
    DensityMatrix::from_matrix(ComplexMatrix::diagonal({0.6, 0.6}));
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("trace") != std::string::npos);
  }
  try {
    DensityMatrix::from_matrix(ComplexMatrix::diagonal({1.5, -0.5}));
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("psd") != std::string::npos);
  }
  try {
    DensityMatrix::from_matrix(ComplexMatrix{{0.5, 0.1}, {0.0, 0.5}});
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("hermitian") != std::string::npos);
  }
  ComplexMatrix nan_rho = ComplexMatrix::diagonal({0.5, 0.5});
  nan_rho(0, 1) = std::nan("");
  CHECK_THROWS_AS(DensityMatrix::from_matrix(nan_rho), Error);
}

TEST_CASE("DensityMatrix boundary vs interior") {
  const auto pure = DensityMatrix::from_matrix(ComplexMatrix::diagonal({1.0, 0.0}));
  CHECK_FALSE(pure.strictly_positive());
  const auto mixed = DensityMatrix::from_matrix(ComplexMatrix::diagonal({0.25, 0.75}));
  CHECK(mixed.strictly_positive());
  CHECK(mixed.min_eigenvalue() == doctest::Approx(0.25).epsilon(1e-14));
  const auto d = diagnose_density(ComplexMatrix::diagonal({0.6, 0.6}));
  CHECK_FALSE(d.valid());
  CHECK(d.trace_error == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("Purification normalization") {
  CHECK_NOTHROW(Purification::from_matrix(ComplexMatrix::identity(2) * kInvSqrt2));
  CHECK(kind_of([] { Purification::from_matrix(ComplexMatrix::identity(2)); }) ==
        ErrorKind::InvalidPurification);
  const auto rank1 = Purification::from_matrix(ComplexMatrix::diagonal({1.0, 0.0}));
  CHECK_FALSE(rank1.invertible());
  CHECK(Purification::from_matrix(ComplexMatrix::identity(2) * kInvSqrt2).invertible());
}

TEST_CASE("project examples") {
  const auto a = project(Purification::from_matrix(ComplexMatrix::identity(2) * kInvSqrt2));
  CHECK(max_abs_diff(a.matrix(), ComplexMatrix::diagonal({0.5, 0.5})) < 1e-15);
  const auto b = project(Purification::from_matrix(ComplexMatrix{{0.0, kInvSqrt2}, {kInvSqrt2, 0.0}}));
  CHECK(max_abs_diff(b.matrix(), ComplexMatrix::diagonal({0.5, 0.5})) < 1e-15);
}

TEST_CASE("section examples and invariants") {
  const auto w = section(DensityMatrix::from_matrix(ComplexMatrix::diagonal({0.25, 0.75})));
  CHECK(max_abs_diff(w.matrix(), ComplexMatrix::diagonal({0.5, std::sqrt(0.75)})) < 1e-15);
  CHECK(std::abs(w.matrix()(1, 1).real() - 0.8660254) < 1e-7);
  const auto half = section(DensityMatrix::from_matrix(ComplexMatrix::identity(2) * 0.5));
  CHECK(max_abs_diff(half.matrix(), ComplexMatrix::identity(2) * kInvSqrt2) < 1e-15);

  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto rho = random_density(2 + seed % 6, seed, true);
    const auto root = section(rho);
    CHECK(frob_norm(project(root).matrix() - rho.matrix()) < 1e-12);
    CHECK(hermiticity_defect(root.matrix()) <= 1e-14);
    CHECK(herm_eig(root.matrix()).eigenvalues.front() >= 0.0);
  }

  const auto boundary = DensityMatrix::from_matrix(ComplexMatrix::diagonal({1.0, 0.0}));
  CHECK(kind_of([&] { section(boundary); }) == ErrorKind::NotStrictlyPositive);
  CHECK_NOTHROW(section(boundary, false));
}

TEST_CASE("fibre_act preserves the projection") {
  const auto w = Purification::from_matrix(ComplexMatrix::diagonal({0.6, 0.8}));
  const ComplexMatrix phase = ComplexMatrix::identity(2) * std::polar(1.0, 0.7);
  CHECK(max_abs_diff(project(fibre_act(w, phase)).matrix(), project(w).matrix()) < 1e-15);

  const ComplexMatrix pauli_x{{0.0, 1.0}, {1.0, 0.0}};
  const auto swapped = fibre_act(w, pauli_x);
  CHECK(max_abs_diff(swapped.matrix(), ComplexMatrix{{0.0, 0.6}, {0.8, 0.0}}) < 1e-15);
  CHECK(max_abs_diff(project(swapped).matrix(), project(w).matrix()) < 1e-15);

  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto v = random_purification(4, seed);
    const auto u = random_unitary(4, seed + 1000);
    CHECK(frob_norm(project(fibre_act(v, u)).matrix() - project(v).matrix()) < 1e-12);
  }
  CHECK(kind_of([&] { fibre_act(w, ComplexMatrix::identity(2) * 2.0); }) == ErrorKind::NotUnitary);
}

TEST_CASE("TangentVector requires Re tr(W^dagger X) = 0") {
  const auto w = Purification::from_matrix(ComplexMatrix::identity(2) * kInvSqrt2);
  CHECK_NOTHROW(TangentVector(w, w.matrix() * cplx(0.0, 1.0)));
  CHECK(kind_of([&] { TangentVector(w, w.matrix()); }) == ErrorKind::NotTangent);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto v = random_purification(3, seed);
    const auto x = random_tangent(v, seed);
    CHECK(std::abs(real_inner(v.matrix(), x.matrix())) <= 1e-12 * frob_norm(x.matrix()));
  }
}

TEST_CASE("Hamiltonian shift") {
  const Hamiltonian regular(ComplexMatrix::diagonal({1.0, 2.0}));
  CHECK(regular.shift() == 0.0);
  CHECK(regular.matrix() == regular.unshifted());

  const Hamiltonian auto_shifted(ComplexMatrix::diagonal({0.0, 1.0}));
  CHECK(auto_shifted.shift() == 1.0);
  CHECK(max_abs_diff(auto_shifted.matrix(), ComplexMatrix::diagonal({1.0, 2.0})) < 1e-15);

  const Hamiltonian with_negative(ComplexMatrix::diagonal({-2.0, 0.0}));
  CHECK(with_negative.shift() == 3.0);
  CHECK(with_negative.eig().eigenvalues.front() == doctest::Approx(1.0).epsilon(1e-15));

  const Hamiltonian explicit_shift(ComplexMatrix::diagonal({1.0, 2.0}), 1.0);
  CHECK(explicit_shift.shift() == 1.0);
  CHECK(max_abs_diff(explicit_shift.inverse(), ComplexMatrix::diagonal({0.5, 1.0 / 3.0})) < 1e-15);
  CHECK(max_abs_diff(explicit_shift.inverse_squared(), ComplexMatrix::diagonal({0.25, 1.0 / 9.0})) < 1e-15);

  CHECK(kind_of([] { Hamiltonian(ComplexMatrix::diagonal({0.0, 1.0}), 0.0); }) ==
        ErrorKind::SingularHamiltonian);
  CHECK(kind_of([] { Hamiltonian(ComplexMatrix::diagonal({1.0, 2.0}), -1.0); }) ==
        ErrorKind::SingularHamiltonian);
  CHECK(kind_of([] { Hamiltonian(ComplexMatrix{{1.0, 1.0}, {0.0, 1.0}}); }) == ErrorKind::NotHermitian);
}

TEST_CASE("Generators are deterministic and valid") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t n = 2 + seed % 7;
    CHECK(random_density(n, seed, true).matrix() == random_density(n, seed, true).matrix());
    CHECK(random_purification(n, seed).matrix() == random_purification(n, seed).matrix());
    const auto w = random_purification(n, seed);
    CHECK(random_tangent(w, seed).matrix() == random_tangent(w, seed).matrix());
    CHECK(random_hamiltonian_matrix(n, seed) == random_hamiltonian_matrix(n, seed));

    const auto rho = random_density(n, seed, true);
    CHECK(rho.strictly_positive());
    CHECK(diagnose_density(rho.matrix()).valid());
    CHECK(std::abs(frob_norm(w.matrix()) - 1.0) < 1e-13);

    const ComplexMatrix u = random_unitary(n, seed);
    CHECK(frob_norm(u.adjoint() * u - ComplexMatrix::identity(n)) < 1e-12);

    const auto e = herm_eig(random_hamiltonian_matrix(n, seed)).eigenvalues;
    for (double l : e) {
      CHECK(std::abs(l) >= 0.5 - 1e-12);
      CHECK(std::abs(l) <= 3.0 + 1e-12);
    }
  }
  CHECK_FALSE(random_density(3, 1, true).matrix() == random_density(3, 2, true).matrix());
}
