#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "qgeom/recurrence.hpp"

namespace qgeom::io {

/// Matrices travel as {"n": k, "re": [[...]], "im": [[...]]}, row-major.
/// Structural problems raise Error(ParseError); I/O problems raise
/// Error(ParseError) as well, since both map to the same exit code.
ComplexMatrix parse_matrix(std::string_view json_text);
ComplexMatrix read_matrix(const std::filesystem::path& path);
std::string matrix_to_json(const ComplexMatrix& m);

std::string report_to_json(const RecurrenceReport& report);
RecurrenceReport report_from_json(std::string_view json_text);

/// 17 significant digits: round-trips any double.
std::string format_double(double x);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace qgeom::io
