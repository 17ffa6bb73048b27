#include "qgeom/cli.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qgeom/dynamics.hpp"
#include "qgeom/matrix_io.hpp"
#include "qgeom/recurrence.hpp"

namespace qgeom::cli {

using nlohmann::json;

namespace {

std::optional<double> parse_shift(const std::string& text) {
  if (text == "auto") return std::nullopt;
  try {
    std::size_t used = 0;
    const double c = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(c)) throw std::invalid_argument(text);
    return c;
  } catch (const std::exception&) {
    throw Error(ErrorKind::ParseError, "--shift expects 'auto' or a number, got '" + text + "'");
  }
}

Hamiltonian load_hamiltonian(const std::string& path, const std::string& shift) {
  const ComplexMatrix m = io::read_matrix(path);
  const auto c = parse_shift(shift);
  return Hamiltonian(m, c);
}

DensityMatrix load_density(const std::string& path) { return DensityMatrix::from_matrix(io::read_matrix(path)); }

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
  } else {
    io::write_text(path, text);
  }
}

// ---------------------------------------------------------------------------
// validate

int cmd_validate(const std::string& file, std::ostream& out, std::ostream& err) {
  const ComplexMatrix m = io::read_matrix(file);
  const DensityDiagnostics d = diagnose_density(m);
  struct Row {
    const char* name;
    double value;
    bool pass;
  };
  const Row rows[] = {
      {"hermitian", d.hermiticity, d.hermitian},
      {"psd", d.min_eigenvalue, d.positive_semidefinite},
      {"trace", d.trace_error, d.unit_trace},
      {"invertibility", d.min_eigenvalue, d.strictly_positive},
  };
  json checks = json::array();
  bool all = true;
  for (const Row& r : rows) {
    checks.push_back({{"name", r.name}, {"value", r.value}, {"tolerance", kStateTol}, {"pass", r.pass}});
    if (!r.pass) {
      err << "invariant '" << r.name << "' failed (value " << io::format_double(r.value) << ")\n";
      all = false;
    }
  }
  json report{{"file", file}, {"n", m.n()}, {"checks", std::move(checks)}, {"valid", all}};
  out << report.dump(2) << '\n';
  return all ? kExitOk : kExitDomain;
}

// ---------------------------------------------------------------------------
// evolve

int cmd_evolve(const std::string& ham_path, const std::string& rho_path, const std::string& shift, double t,
               long long steps, const std::string& method, std::optional<double> dt,
               const std::string& out_path, std::ostream& out) {
  if (steps < 1) throw Error(ErrorKind::InvalidArgument, "--steps must be >= 1");
  if (t < 0.0) throw Error(ErrorKind::InvalidArgument, "--t must be >= 0");
  const Hamiltonian h = load_hamiltonian(ham_path, shift);
  const DensityMatrix rho0 = load_density(rho_path);
  require_same_dim(h.matrix(), rho0.matrix());
  const std::size_t n = h.n();
  const double interval = t / static_cast<double>(steps);
  const double step = dt.value_or(interval);

  std::ostringstream csv;
  csv << 't';
  for (const char* part : {"re", "im"})
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) csv << ',' << part << '_' << i << '_' << j;
  csv << ",purity,trace_err\n";

  ComplexMatrix current = rho0.matrix();
  for (long long k = 1; k <= steps; ++k) {
    const double tk = (k == steps) ? t : static_cast<double>(k) * interval;
    if (method == "exact") {
      current = evolve_exact(h, rho0, tk).matrix();
    } else if (interval > 0.0) {
      current = rk4_propagate(h, current, interval, std::min(step, interval));
    }
    csv << io::format_double(tk);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) csv << ',' << io::format_double(current(i, j).real());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) csv << ',' << io::format_double(current(i, j).imag());
    const double purity = (current * current).trace().real();
    const double trace_err = std::abs(current.trace() - cplx(1.0));
    csv << ',' << io::format_double(purity) << ',' << io::format_double(trace_err) << '\n';
  }
  emit(out_path, csv.str(), out);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// metric

int cmd_metric(const std::optional<std::string>& ham_path, const std::string& rho_path,
               const std::string& y_path, const std::string& z_path, bool bures, const std::string& shift,
               std::ostream& out, std::ostream& err) {
  const DensityMatrix rho = load_density(rho_path);
  const ComplexMatrix y = io::read_matrix(y_path);
  const ComplexMatrix z = io::read_matrix(z_path);

  std::vector<std::string> failures;
  if (y.n() != rho.n() || z.n() != rho.n()) failures.emplace_back("dimensions of rho, Y and Z must agree");
  if (!rho.strictly_positive()) failures.emplace_back("rho must be strictly positive");
  if (failures.empty()) {
    for (const auto& [name, m] : {std::pair<const char*, const ComplexMatrix*>{"Y", &y}, {"Z", &z}}) {
      if (frob_norm(*m - m->adjoint()) > kHermitianTol) failures.push_back(std::string(name) + " must be Hermitian");
      if (std::abs(m->trace()) > kHermitianTol) failures.push_back(std::string(name) + " must be traceless");
    }
  }
  if (!failures.empty()) {
    for (const auto& f : failures) err << "precondition failed: " << f << '\n';
    return kExitDomain;
  }

  double value;
  if (bures) {
    value = bures_metric(rho, y, z);
  } else {
    if (!ham_path) throw Error(ErrorKind::ParseError, "--ham is required unless --bures is given");
    const DynamicMetric metric(load_hamiltonian(*ham_path, shift));
    value = base_metric(metric, rho, y, z);
  }
  out << json{{"value", value}}.dump() << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------
// recur / spectrum

int cmd_recur(const std::string& ham_path, const std::string& rho_path, const std::string& shift, double eps,
              double t_max, std::size_t grid, const std::string& out_path,
              const std::optional<std::string>& curve_path, std::ostream& out) {
  const Hamiltonian h = load_hamiltonian(ham_path, shift);
  const DensityMatrix rho = load_density(rho_path);
  require_same_dim(h.matrix(), rho.matrix());
  const SpectralState state = energy_rep(h, rho);
  const RecurrenceReport report = recurrence_scan(state, eps, t_max, grid);
  emit(out_path, io::report_to_json(report) + "\n", out);
  if (curve_path) {
    std::ostringstream csv;
    csv << "T,deviation\n";
    for (const auto& p : deviation_curve(state, t_max, grid))
      csv << io::format_double(p.period) << ',' << io::format_double(p.deviation) << '\n';
    emit(*curve_path, csv.str(), out);
  }
  return kExitOk;
}

int cmd_spectrum(const std::string& ham_path, const std::string& rho_path, const std::string& shift,
                 std::ostream& out, std::ostream& err) {
  const Hamiltonian h = load_hamiltonian(ham_path, shift);
  const DensityMatrix rho = load_density(rho_path);
  require_same_dim(h.matrix(), rho.matrix());
  const SpectralState state = energy_rep(h, rho);
  out << "n,n_prime,omega,weight\n";
  for (const auto& line : spectral_lines(state))
    out << line.n << ',' << line.n_prime << ',' << io::format_double(line.omega) << ','
        << io::format_double(line.weight) << '\n';
  err << "stationary: " << (state.stationary() ? "true (deviation identically zero)" : "false") << '\n';
  return kExitOk;
}

}  // namespace

// ---------------------------------------------------------------------------
// verify

namespace {

std::uint64_t derive(std::uint64_t seed, std::uint64_t stream, std::uint64_t k) {
  return seed * 1000003ULL + stream * 7919ULL + k;
}

// Traceless Hermitian direction of unit Frobenius norm.
ComplexMatrix random_base_tangent(std::size_t n, std::uint64_t seed) {
  ComplexMatrix y = random_hermitian(n, seed);
  y -= ComplexMatrix::identity(n) * (y.trace() / static_cast<double>(n));
  return y * (1.0 / frob_norm(y));
}

}  // namespace

std::vector<VerifyCheck> run_verify_suite(const VerifyOptions& o) {
  if (o.n < 2) throw Error(ErrorKind::InvalidArgument, "verify needs n >= 2");
  if (o.samples < 1) throw Error(ErrorKind::InvalidArgument, "verify needs at least one sample");
  const ComplexMatrix hm = o.hamiltonian ? *o.hamiltonian : random_hamiltonian_matrix(o.n, derive(o.seed, 0, 0));
  if (hm.n() != o.n) throw Error(ErrorKind::DimensionMismatch, "--n does not match the Hamiltonian dimension");
  const Hamiltonian h(hm, o.shift);
  const DynamicMetric metric(h, o.corrupt_metric ? MetricWeight::InverseFirstPower : MetricWeight::InverseSquare);
  const std::size_t n = o.n;
  const auto samples = static_cast<std::uint64_t>(o.samples);
  const double times[] = {0.1, 1.0, 10.0};

  std::vector<VerifyCheck> checks;
  const auto add = [&](std::string name, double value, double tol) {
    checks.push_back({std::move(name), value, tol, value <= tol, false});
  };

  double unit = 0.0, iso = 0.0, kill_h = 0.0, kill_c = 0.0, geo = 0.0, proj = 0.0, chord = 0.0;
  std::uint64_t control_hits = 0;
  const ComplexMatrix commutant = hm * hm;
  for (std::uint64_t k = 0; k < samples; ++k) {
    const Purification w = random_purification(n, derive(o.seed, 1, k));
    const Purification v = random_purification(n, derive(o.seed, 2, k));
    const TangentVector x = random_tangent(w, derive(o.seed, 3, k));
    const TangentVector y = random_tangent(w, derive(o.seed, 4, k));
    const double scale = 1.0 + std::abs(g_total(metric, x, y));

    unit = std::max(unit, unit_speed_defect(metric, w));
    for (double t : times) {
      iso = std::max(iso, isometry_defect(metric, x, y, t) / scale);
      kill_h = std::max(kill_h, killing_defect(metric, hm, x, y, t) / scale);
      kill_c = std::max(kill_c, killing_defect(metric, commutant, x, y, t) / scale);
      proj = std::max(proj, projection_defect(h, w, t));
      chord = std::max(chord, chord_defect(metric, w, v, t));
    }
    const ComplexMatrix control = random_hermitian(n, derive(o.seed, 5, k));
    if (killing_defect(metric, control, x, y, 1.0) > 1e-4) ++control_hits;
    for (double t : {0.0, 0.5, 5.0})
      geo = std::max(geo, geodesic_residual(metric, w, t, 20, derive(o.seed, 6, k)));
  }

  add("unit_speed", unit, 1e-12);
  add("isometry", iso, 1e-11);
  add("killing_hamiltonian", kill_h, 1e-11);
  add("killing_commutant", kill_c, 1e-11);
  {
    const double fraction = static_cast<double>(control_hits) / static_cast<double>(samples);
    checks.push_back({"killing_negative_control", fraction, 0.95, fraction >= 0.95, true});
  }
  add("geodesic", geo, 1e-10);
  add("projection", proj, 1e-11);
  add("chord_distance", chord, 1e-12);

  double volume = std::numeric_limits<double>::infinity();
  try {
    const Frame f = frame(metric, random_purification(n, derive(o.seed, 7, 0)), o.seed);
    volume = 0.0;
    for (double t : {0.5, 5.0}) volume = std::max(volume, std::abs(pushed_gram_det(metric, f, t) - 1.0));
  } catch (const Error&) {
    // A weight that is not positive definite cannot produce an orthonormal frame.
  }
  add("volume", volume, 1e-8);

  double lift = 0.0;
  double bures = 0.0;
  {
    const DynamicMetric identity_metric(Hamiltonian(ComplexMatrix::identity(n)));
    for (std::uint64_t k = 0; k < samples; ++k) {
      const DensityMatrix rho = random_density(n, derive(o.seed, 8, k), true);
      const ComplexMatrix yb = random_base_tangent(n, derive(o.seed, 9, k)) * 0.1;
      const ComplexMatrix zb = random_base_tangent(n, derive(o.seed, 10, k)) * 0.1;
      const Purification tau = section(rho);
      const double base = base_metric(metric, rho, yb, zb);
      const double lifted =
          g_total(metric, horizontal_lift(metric, rho, yb, tau), horizontal_lift(metric, rho, zb, tau));
      lift = std::max(lift, std::abs(base - lifted));
      bures = std::max(bures, std::abs(bures_metric(rho, yb, zb) - base_metric(identity_metric, rho, yb, zb)));
    }
  }
  add("horizontal_lift_consistency", lift, 1e-9);
  add("bures_identity", bures, 1e-12);
  return checks;
}

namespace {

int cmd_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err) {
  const auto checks = run_verify_suite(options);
  json rows = json::array();
  const VerifyCheck* first_failure = nullptr;
  for (const auto& c : checks) {
    rows.push_back({{"name", c.name},
                    {"value", c.value},
                    {"tolerance", c.tolerance},
                    {"expect_violation", c.expect_violation},
                    {"pass", c.pass}});
    if (!c.pass && !first_failure) first_failure = &c;
  }
  json report{{"n", options.n},
              {"seed", options.seed},
              {"samples", options.samples},
              {"metric", options.corrupt_metric ? "inverse_first_power" : "inverse_square"},
              {"checks", std::move(rows)},
              {"all_pass", first_failure == nullptr}};
  out << report.dump(2) << '\n';
  if (first_failure) {
    err << "verify: check '" << first_failure->name << "' failed\n";
    return kExitDomain;
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Geometric toolkit for mixed-state quantum dynamics", "qgeom"};
  app.require_subcommand(1);

  std::string shift = "auto";
  const auto add_shift = [&](CLI::App* sub) {
    sub->add_option("--shift", shift, "Invertibility shift c in H -> H + c I ('auto' or a number)");
  };

  auto* validate = app.add_subcommand("validate", "Check density-matrix invariants of a matrix file");
  std::string validate_file;
  validate->add_option("file", validate_file)->required();

  auto* evolve = app.add_subcommand("evolve", "Time series of the von Neumann evolution as CSV");
  std::string ham, rho, out_path, method = "exact";
  double t = 0.0;
  long long steps = 1;
  std::optional<double> dt;
  evolve->add_option("--ham", ham)->required();
  evolve->add_option("--rho", rho)->required();
  evolve->add_option("--t", t)->required()->check(CLI::NonNegativeNumber);
  evolve->add_option("--steps", steps)->required()->check(CLI::PositiveNumber);
  evolve->add_option("--method", method)->required()->check(CLI::IsMember({"exact", "rk4"}));
  evolve->add_option("--dt", dt)->check(CLI::PositiveNumber);
  evolve->add_option("--out", out_path)->required();
  add_shift(evolve);

  auto* metric = app.add_subcommand("metric", "Base metric g_H(Y, Z) at rho, or the Bures metric");
  std::optional<std::string> metric_ham;
  std::string y_path, z_path;
  bool bures = false;
  metric->add_option("--ham", metric_ham);
  metric->add_option("--rho", rho)->required();
  metric->add_option("--y", y_path)->required();
  metric->add_option("--z", z_path)->required();
  metric->add_flag("--bures", bures);
  add_shift(metric);

  auto* verify = app.add_subcommand("verify", "Seeded numerical verification suite");
  std::optional<std::string> verify_ham;
  VerifyOptions vopts;
  verify->add_option("--ham", verify_ham, "Hamiltonian file (random when omitted)");
  verify->add_option("--n", vopts.n)->check(CLI::Range(std::size_t{2}, std::size_t{32}));
  verify->add_option("--seed", vopts.seed);
  verify->add_option("--checks", vopts.samples, "Random samples per check")->check(CLI::PositiveNumber);
  verify->add_flag("--debug-corrupt-metric", vopts.corrupt_metric, "Weight the metric by H^-1 (fault injection)");
  add_shift(verify);

  auto* recur = app.add_subcommand("recur", "Scan for recurrence times");
  double eps = 0.0, t_max = 0.0;
  std::size_t grid = kDefaultScanGrid;
  std::optional<std::string> curve;
  recur->add_option("--ham", ham)->required();
  recur->add_option("--rho", rho)->required();
  recur->add_option("--eps", eps)->required()->check(CLI::PositiveNumber);
  recur->add_option("--t-max", t_max)->required()->check(CLI::PositiveNumber);
  recur->add_option("--grid", grid, "Coarse grid points (default 10000)")->check(CLI::Range(std::size_t{2}, std::size_t{100000000}));
  recur->add_option("--out", out_path)->required();
  recur->add_option("--curve", curve, "Also write the coarse deviation curve as CSV");
  add_shift(recur);

  auto* spectrum = app.add_subcommand("spectrum", "Bohr frequencies and weights as CSV");
  spectrum->add_option("--ham", ham)->required();
  spectrum->add_option("--rho", rho)->required();
  add_shift(spectrum);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitIo;
  }

  try {
    if (*validate) return cmd_validate(validate_file, out, err);
    if (*evolve) return cmd_evolve(ham, rho, shift, t, steps, method, dt, out_path, out);
    if (*metric) return cmd_metric(metric_ham, rho, y_path, z_path, bures, shift, out, err);
    if (*verify) {
      if (verify_ham) {
        vopts.hamiltonian = io::read_matrix(*verify_ham);
        if (verify->count("--n") == 0) vopts.n = vopts.hamiltonian->n();
      }
      vopts.shift = parse_shift(shift);
      return cmd_verify(vopts, out, err);
    }
    if (*recur) return cmd_recur(ham, rho, shift, eps, t_max, grid, out_path, curve, out);
    if (*spectrum) return cmd_spectrum(ham, rho, shift, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::ParseError ? kExitIo : kExitDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitIo;
}

}  // namespace qgeom::cli
