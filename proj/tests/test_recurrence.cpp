#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "qgeom/dynamics.hpp"
#include "qgeom/numerics.hpp"
#include "qgeom/recurrence.hpp"

using namespace qgeom;
using oracle::max_abs_diff;

namespace {

const double kPi = std::numbers::pi;

DensityMatrix plus_state() {
  return DensityMatrix::from_matrix(ComplexMatrix{{0.5, 0.5}, {0.5, 0.5}});
}

SpectralState state_for(std::initializer_list<double> energies, const DensityMatrix& rho) {
  return energy_rep(Hamiltonian(ComplexMatrix::diagonal(energies)), rho);
}

}  // namespace

TEST_CASE("energy_rep examples") {
  const auto rho = DensityMatrix::from_matrix(ComplexMatrix::diagonal({0.3, 0.7}));
  const auto same = state_for({1.0, 2.0}, rho);
  CHECK(max_abs_diff(same.rho_energy, rho.matrix()) < 1e-15);

  const auto swapped = state_for({1.0, 0.0}, rho);
  CHECK(swapped.energies[0] < swapped.energies[1]);
  CHECK(max_abs_diff(swapped.rho_energy, ComplexMatrix::diagonal({0.7, 0.3})) < 1e-15);
  CHECK(swapped.stationary());
}

TEST_CASE("energy_rep reconstructs rho") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t n = 2 + seed % 6;
    const Hamiltonian h(random_hamiltonian_matrix(n, seed));
    const auto rho = random_density(n, seed + 1, true);
    const auto s = energy_rep(h, rho);
    CHECK(frob_norm(to_original_basis(s, s.rho_energy) - rho.matrix()) <= 1e-12);
    CHECK(std::is_sorted(s.energies.begin(), s.energies.end()));
    for (double t : {0.7, 12.0})
      CHECK(frob_norm(to_original_basis(s, evolve_energy(s, s.rho_energy, t)) - evolve_exact(h, rho, t).matrix()) <=
            1e-11);
  }
}

TEST_CASE("deviation examples") {
  const auto s = state_for({0.0, 1.0}, plus_state());
  CHECK(deviation(s, 0.0) == 0.0);
  CHECK(deviation(s, kPi) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(std::abs(deviation(s, kPi) - 1.4142136) < 1e-7);
  CHECK(deviation(s, 2 * kPi) <= 1e-12);
}

TEST_CASE("deviation equals the norm of rho(t + T) - rho(t)") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t n = 2 + seed % 5;
    const Hamiltonian h(random_hamiltonian_matrix(n, seed));
    const auto rho = random_density(n, seed + 3, true);
    const auto s = energy_rep(h, rho);
    for (double t : {0.0, 2.5})
      for (double period : {0.4, 3.3, 17.0}) {
        const double direct =
            frob_norm(evolve_exact(h, rho, t + period).matrix() - evolve_exact(h, rho, t).matrix());
        CHECK(std::abs(deviation(s, period) - direct) <= 1e-11);
      }
  }
}

TEST_CASE("spectral_lines lists every pair") {
  const auto s = state_for({0.0, 0.5}, plus_state());
  const auto lines = spectral_lines(s);
  REQUIRE(lines.size() == 4);
  CHECK(lines[1].n == 0);
  CHECK(lines[1].n_prime == 1);
  CHECK(lines[1].omega == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(lines[1].weight == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(lines[2].omega == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK_FALSE(s.stationary());
}

TEST_CASE("recurrence_scan commensurate spectra") {
  const auto rho = random_density(3, 42, true);
  const auto s = state_for({0.0, 1.0, 2.0}, rho);
  const auto report = recurrence_scan(s, 1e-6, 10.0);
  REQUIRE_FALSE(report.hits.empty());
  CHECK(std::abs(report.hits.front().period - 2 * kPi) <= 1e-6);
  CHECK(report.hits.front().deviation <= 1e-9);
  CHECK(report.scanned_points == kDefaultScanGrid);
  CHECK(deviation(s, 2 * kPi) <= 1e-10);

  const auto half = state_for({0.0, 0.5}, plus_state());
  const auto r2 = recurrence_scan(half, 1e-6, 15.0);
  REQUIRE_FALSE(r2.hits.empty());
  CHECK(std::abs(r2.hits.front().period - 4 * kPi) <= 1e-6);
}

TEST_CASE("recurrence_scan edge cases") {
  const auto s = state_for({0.0, 1.0}, plus_state());
  const auto none = recurrence_scan(s, 1e-6, 5.0, 1000);
  CHECK(none.hits.empty());
  CHECK_FALSE(none.stationary);

  const auto still = state_for({0.0, 1.0}, DensityMatrix::from_matrix(ComplexMatrix::diagonal({0.3, 0.7})));
  const auto r = recurrence_scan(still, 1e-6, 5.0, 100);
  CHECK(r.stationary);
  REQUIRE(r.hits.size() == 1);
  CHECK(r.hits[0].deviation == 0.0);

  CHECK_THROWS_AS(recurrence_scan(s, 0.0, 5.0), Error);
  CHECK_THROWS_AS(recurrence_scan(s, 1e-3, -1.0), Error);
  CHECK_THROWS_AS(recurrence_scan(s, 1e-3, 5.0, 0), Error);

  const auto curve = deviation_curve(s, 2.0, 4);
  REQUIRE(curve.size() == 4);
  CHECK(curve[3].period == 2.0);
  CHECK(curve[0].deviation == deviation(s, 0.5));
}

TEST_CASE("recurrence_scan hits re-verify and are sorted") {
  const auto rho = random_density(3, 5, true);
  const auto s = state_for({0.0, 1.0, std::numbers::sqrt2}, rho);
  const auto report = recurrence_scan(s, 0.1, 500.0);
  CHECK_FALSE(report.hits.empty());
  for (std::size_t k = 0; k < report.hits.size(); ++k) {
    CHECK(deviation(s, report.hits[k].period) < 0.1);
    CHECK(deviation(s, report.hits[k].period) == report.hits[k].deviation);
    if (k > 0) CHECK(report.hits[k].period > report.hits[k - 1].period + 500.0 / kDefaultScanGrid);
  }
}

TEST_CASE("truncate") {
  const auto s = state_for({0.0, 1.0}, plus_state());
  const auto full = truncate(s, 1, 1);
  CHECK(full.sigma == s.rho_energy);
  CHECK(full.error == 0.0);

  const auto t00 = truncate(s, 0, 0);
  CHECK(t00.sigma(0, 0) == cplx(0.5));
  CHECK(t00.sigma(1, 1) == cplx(0.0));
  CHECK(std::abs(t00.error - 0.8660254) <= 1e-7);

  CHECK_THROWS_AS(truncate(s, 2, 0), Error);

  // Discarded-entry norm computed by hand over the complement.
  const auto rho = random_density(4, 8, true);
  const auto big = energy_rep(Hamiltonian(random_hamiltonian_matrix(4, 8)), rho);
  const auto t = truncate(big, 1, 2);
  const ComplexMatrix discarded = big.rho_energy - t.sigma;
  CHECK(t.error == doctest::Approx(frob_norm(discarded)).epsilon(1e-15));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (i <= 1 && j <= 2) CHECK(discarded(i, j) == cplx(0.0));
}

TEST_CASE("exact_period") {
  using R = std::optional<Rational>;
  const std::vector<R> integers{Rational{0, 1}, Rational{1, 1}, Rational{2, 1}};
  CHECK(exact_period(integers).value() == doctest::Approx(2 * kPi).epsilon(1e-15));
  const std::vector<R> halves{Rational{0, 1}, Rational{1, 2}};
  CHECK(exact_period(halves).value() == doctest::Approx(4 * kPi).epsilon(1e-15));
  const std::vector<R> single{Rational{3, 7}};
  CHECK(exact_period(single).value() == 0.0);
  const std::vector<R> mixed{Rational{0, 1}, std::nullopt};
  CHECK_FALSE(exact_period(mixed).has_value());
  const std::vector<R> thirds{Rational{1, 3}, Rational{1, 2}};
  CHECK(exact_period(thirds).value() == doctest::Approx(12 * kPi).epsilon(1e-15));
}

TEST_CASE("energy representation invariants") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto s = energy_rep(Hamiltonian(random_hamiltonian_matrix(5, seed)), random_density(5, seed + 1, true));
    CHECK(frob_norm(s.rho_energy - s.rho_energy.adjoint()) <= 1e-11);
    CHECK(std::abs(s.rho_energy.trace() - cplx(1.0)) <= 1e-11);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j) CHECK(s.omega(i, j) == -s.omega(j, i));
  }
}

TEST_CASE("multiples of the exact period recur") {
  using R = std::optional<Rational>;
  const std::vector<R> energies{Rational{0, 1}, Rational{1, 3}, Rational{3, 2}};
  const double period = exact_period(energies).value();
  const auto s = state_for({0.0, 1.0 / 3.0, 1.5}, random_density(3, 77, true));
  for (int k = 1; k <= 5; ++k) CHECK(deviation(s, k * period) <= 1e-10);
}

TEST_CASE("refined hits never exceed the nearest grid value") {
  const auto s = state_for({0.0, 1.0, std::numbers::sqrt2}, random_density(3, 11, true));
  const double t_max = 300.0;
  const std::size_t grid = 3000;
  const auto report = recurrence_scan(s, 0.2, t_max, grid);
  REQUIRE_FALSE(report.hits.empty());
  const double h = t_max / static_cast<double>(grid);
  for (const auto& hit : report.hits) {
    const double nearest = std::max(h, std::round(hit.period / h) * h);
    CHECK(hit.deviation <= deviation(s, nearest));
  }
}

TEST_CASE("truncation error is time independent") {
  const Hamiltonian h(random_hamiltonian_matrix(4, 21));
  const auto rho = random_density(4, 22, true);
  const auto s = energy_rep(h, rho);
  const auto t = truncate(s, 1, 2);
  std::vector<double> gaps;
  for (int k = 0; k < 100; ++k) {
    const double time = 0.25 * k;
    const ComplexMatrix sigma_t = to_original_basis(s, evolve_energy(s, t.sigma, time));
    gaps.push_back(frob_norm(evolve_exact(h, rho, time).matrix() - sigma_t));
  }
  double mean = 0.0;
  for (double g : gaps) mean += g / gaps.size();
  double var = 0.0;
  for (double g : gaps) var += (g - mean) * (g - mean) / gaps.size();
  CHECK(std::sqrt(var) <= 1e-10);
  CHECK(mean == doctest::Approx(t.error).epsilon(1e-10));
}
