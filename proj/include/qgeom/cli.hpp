#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qgeom/matrix.hpp"

namespace qgeom::cli {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitIo = 2;

/// Runs the command line given as argv[1..] (no program name). Output that a
/// subcommand does not route to a file goes to `out`; diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct VerifyCheck {
  std::string name;
  double value;      // worst observed defect (or pass fraction for the control)
  double tolerance;
  bool pass;
  bool expect_violation;  // negative control: the underlying property must fail
};

struct VerifyOptions {
  std::size_t n = 4;
  std::uint64_t seed = 7;
  int samples = 20;
  bool corrupt_metric = false;  // weight H^-1 instead of H^-2
  std::optional<ComplexMatrix> hamiltonian;  // random when absent
  std::optional<double> shift;
};

/// The suite behind `verify`, exposed for tests.
std::vector<VerifyCheck> run_verify_suite(const VerifyOptions& options);

}  // namespace qgeom::cli
