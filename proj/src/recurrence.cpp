#include "qgeom/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace qgeom {

namespace {

constexpr double kFrequencyTol = 1e-12;
constexpr double kWeightTol = 1e-28;

double frequency_floor(const SpectralState& s) {
  double scale = 1.0;
  for (double e : s.energies) scale = std::max(scale, std::abs(e));
  return kFrequencyTol * scale;
}

}  // namespace

bool SpectralState::stationary() const {
  const double floor = frequency_floor(*this);
  for (std::size_t i = 0; i < n(); ++i)
    for (std::size_t j = 0; j < n(); ++j)
      if (std::abs(omega(i, j)) > floor && weight(i, j) > kWeightTol) return false;
  return true;
}

SpectralState energy_rep(const Hamiltonian& h, const DensityMatrix& rho) {
  require_same_dim(h.matrix(), rho.matrix());
  const EigenDecomposition& eig = h.eig();
  const ComplexMatrix& u = eig.eigenvectors;
  ComplexMatrix r = u.adjoint() * rho.matrix() * u;
  r = (r + r.adjoint()) * 0.5;
  return SpectralState{eig.eigenvalues, u, std::move(r)};
}

std::vector<SpectralLine> spectral_lines(const SpectralState& state) {
  std::vector<SpectralLine> out;
  out.reserve(state.n() * state.n());
  for (std::size_t i = 0; i < state.n(); ++i)
    for (std::size_t j = 0; j < state.n(); ++j)
      out.push_back({i, j, state.omega(i, j), state.weight(i, j)});
  return out;
}

double deviation(const SpectralState& state, double period) {
  double sum = 0.0;
  for (std::size_t i = 0; i < state.n(); ++i)
    for (std::size_t j = 0; j < state.n(); ++j) {
      if (i == j) continue;
      // |exp(i x) - 1| = 2 |sin(x / 2)|, which stays accurate near x = 2 pi k.
      const double s = 2.0 * std::sin(0.5 * state.omega(i, j) * period);
      sum += state.weight(i, j) * s * s;
    }
  return std::sqrt(sum);
}

ComplexMatrix evolve_energy(const SpectralState& state, const ComplexMatrix& m, double t) {
  require_same_dim(state.rho_energy, m);
  ComplexMatrix out = m;
  for (std::size_t i = 0; i < state.n(); ++i)
    for (std::size_t j = 0; j < state.n(); ++j) out(i, j) *= std::polar(1.0, state.omega(i, j) * t);
  return out;
}

ComplexMatrix to_original_basis(const SpectralState& state, const ComplexMatrix& m) {
  return state.basis * m * state.basis.adjoint();
}

std::vector<CurvePoint> deviation_curve(const SpectralState& state, double t_max, std::size_t grid) {
  if (!(t_max > 0.0)) throw Error(ErrorKind::InvalidArgument, "t_max must be positive");
  if (grid < 2) throw Error(ErrorKind::InvalidArgument, "grid must have at least 2 points");
  const double spacing = t_max / static_cast<double>(grid);
  std::vector<CurvePoint> curve(grid);
  for (std::size_t k = 0; k < grid; ++k) {
    const double t = static_cast<double>(k + 1) * spacing;
    curve[k] = {t, deviation(state, t)};
  }
  return curve;
}

namespace {

CurvePoint golden_section(const SpectralState& state, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = deviation(state, c);
  double fd = deviation(state, d);
  for (int it = 0; it < 200 && (b - a) > 1e-14 * std::max(1.0, std::abs(b)); ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = deviation(state, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = deviation(state, d);
    }
  }
  return fc < fd ? CurvePoint{c, fc} : CurvePoint{d, fd};
}

}  // namespace

RecurrenceReport recurrence_scan(const SpectralState& state, double epsilon, double t_max,
                                 std::size_t grid) {
  if (!(epsilon > 0.0)) throw Error(ErrorKind::InvalidArgument, "epsilon must be positive");
  const std::vector<CurvePoint> curve = deviation_curve(state, t_max, grid);
  const double spacing = t_max / static_cast<double>(grid);

  RecurrenceReport report;
  report.epsilon = epsilon;
  report.t_max = t_max;
  report.scanned_points = grid;
  report.stationary = state.stationary();
  if (report.stationary) {
    report.hits.push_back({curve.front().period, curve.front().deviation});
    return report;
  }

  // |D'(T)| <= L, so a minimum below epsilon lies within L h of a grid value.
  double lipschitz_sq = 0.0;
  for (std::size_t i = 0; i < state.n(); ++i)
    for (std::size_t j = 0; j < state.n(); ++j) lipschitz_sq += state.weight(i, j) * state.omega(i, j) * state.omega(i, j);
  const double gate = 2.0 * epsilon + std::sqrt(lipschitz_sq) * spacing;

  for (std::size_t k = 0; k < grid; ++k) {
    const double here = curve[k].deviation;
    // deviation(0) = 0 is the left neighbour of the first grid point.
    const double left = k == 0 ? 0.0 : curve[k - 1].deviation;
    const bool is_min = here <= left && (k + 1 == grid || here <= curve[k + 1].deviation);
    if (!is_min || here >= gate) continue;

    const double lo = static_cast<double>(k) * spacing;
    const double hi = std::min(t_max, static_cast<double>(k + 2) * spacing);
    CurvePoint best = golden_section(state, lo, hi);
    if (!(best.deviation <= here)) best = curve[k];
    if (best.deviation >= epsilon) continue;

    if (!report.hits.empty() && best.period - report.hits.back().period <= spacing) {
      if (best.deviation < report.hits.back().deviation)
        report.hits.back() = {best.period, best.deviation};
      continue;
    }
    report.hits.push_back({best.period, best.deviation});
  }
  std::sort(report.hits.begin(), report.hits.end(),
            [](const RecurrenceHit& a, const RecurrenceHit& b) { return a.period < b.period; });
  return report;
}

Truncation truncate(const SpectralState& state, std::size_t n_max, std::size_t n_prime_max) {
  if (n_max >= state.n() || n_prime_max >= state.n())
    throw Error(ErrorKind::IndexOutOfRange, "truncation indices must be < n");
  ComplexMatrix sigma(state.n());
  double discarded = 0.0;
  for (std::size_t i = 0; i < state.n(); ++i)
    for (std::size_t j = 0; j < state.n(); ++j) {
      if (i <= n_max && j <= n_prime_max) {
        sigma(i, j) = state.rho_energy(i, j);
      } else {
        discarded += state.weight(i, j);
      }
    }
  return Truncation{std::move(sigma), std::sqrt(discarded)};
}

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw Error(ErrorKind::InvalidArgument, "rational arithmetic overflow in exact_period");
  return r;
}

}  // namespace

std::optional<double> exact_period(std::span<const std::optional<Rational>> energies) {
  for (const auto& e : energies)
    if (e && e->den == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator");

  std::int64_t lcm = 1;
  bool any_frequency = false;
  for (std::size_t i = 0; i < energies.size(); ++i)
    for (std::size_t j = i + 1; j < energies.size(); ++j) {
      if (!energies[i] || !energies[j]) return std::nullopt;
      const Rational& a = *energies[i];
      const Rational& b = *energies[j];
      std::int64_t num = checked_mul(b.num, a.den) - checked_mul(a.num, b.den);
      std::int64_t den = checked_mul(a.den, b.den);
      if (num == 0) continue;
      any_frequency = true;
      const std::int64_t g = std::gcd(num, den);
      den = std::abs(den / g);
      lcm = checked_mul(lcm / std::gcd(lcm, den), den);
    }
  if (!any_frequency) {
    // A single irrational level has no frequencies either.
    return 0.0;
  }
  return 2.0 * std::numbers::pi * static_cast<double>(lcm);
}

}  // namespace qgeom
