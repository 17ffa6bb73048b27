#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qgeom/states.hpp"

namespace qgeom {

/// A density matrix written in the eigenbasis of H. Entry (n, n') of
/// rho_energy oscillates as exp(i omega_{nn'} t), omega_{nn'} = E_{n'} - E_n.
struct SpectralState {
  std::vector<double> energies;  // ascending
  ComplexMatrix basis;           // columns |n>
  ComplexMatrix rho_energy;      // <n| rho |n'>

  std::size_t n() const noexcept { return energies.size(); }
  double omega(std::size_t i, std::size_t j) const { return energies[j] - energies[i]; }
  double weight(std::size_t i, std::size_t j) const { return std::norm(rho_energy(i, j)); }

  /// True when every entry with a nonzero Bohr frequency vanishes, so the
  /// deviation is identically zero.
  bool stationary() const;
};

struct SpectralLine {
  std::size_t n;
  std::size_t n_prime;
  double omega;
  double weight;
};

SpectralState energy_rep(const Hamiltonian& h, const DensityMatrix& rho);

/// All n^2 (n, n', omega, |rho_{nn'}|^2) rows, row-major in (n, n').
std::vector<SpectralLine> spectral_lines(const SpectralState& state);

/// ||rho(t + T) - rho(t)|| in closed form; independent of t.
double deviation(const SpectralState& state, double period);

/// Energy-basis matrix M with each entry advanced by exp(i omega t).
ComplexMatrix evolve_energy(const SpectralState& state, const ComplexMatrix& m, double t);
/// U M U^dagger
ComplexMatrix to_original_basis(const SpectralState& state, const ComplexMatrix& m);

struct RecurrenceHit {
  double period;
  double deviation;
};

struct RecurrenceReport {
  double epsilon = 0.0;
  double t_max = 0.0;
  std::vector<RecurrenceHit> hits;
  std::size_t scanned_points = 0;
  bool stationary = false;
};

struct CurvePoint {
  double period;
  double deviation;
};

inline constexpr std::size_t kDefaultScanGrid = 10000;

/// Uniform grid T_k = k t_max / grid (k = 1..grid).
std::vector<CurvePoint> deviation_curve(const SpectralState& state, double t_max, std::size_t grid);

/// Coarse grid scan over (0, t_max] followed by golden-section refinement of
/// every grid-local minimum below 2 epsilon + L h (L the Lipschitz bound of
/// the deviation, h the spacing). Hits (deviation < epsilon) are
/// de-duplicated within one grid spacing and sorted by period. A stationary
/// state recurs at every T; its report carries the first grid point.
RecurrenceReport recurrence_scan(const SpectralState& state, double epsilon, double t_max,
                                 std::size_t grid = kDefaultScanGrid);

struct Truncation {
  ComplexMatrix sigma;  // energy basis
  double error;
};

/// Keeps rho_{nn'} for n <= N and n' <= N'. The error is the exact norm of
/// every discarded entry, cross blocks included.
Truncation truncate(const SpectralState& state, std::size_t n_max, std::size_t n_prime_max);

struct Rational {
  std::int64_t num;
  std::int64_t den;
};

/// 2 pi L with L the lcm of the reduced denominators of all nonzero energy
/// differences, so that omega T is a multiple of 2 pi for every frequency.
/// Irrational energies are passed as nullopt and make the result nullopt
/// whenever a frequency exists. No nonzero frequency gives 0.
std::optional<double> exact_period(std::span<const std::optional<Rational>> energies);

}  // namespace qgeom
