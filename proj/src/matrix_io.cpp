#include "qgeom/matrix_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace qgeom::io {

using nlohmann::json;

namespace {

std::vector<std::vector<double>> read_block(const json& j, const char* key, std::size_t n) {
  if (!j.contains(key)) throw Error(ErrorKind::ParseError, std::string("missing field '") + key + "'");
  const json& rows = j.at(key);
  if (!rows.is_array() || rows.size() != n)
    throw Error(ErrorKind::ParseError, std::string("'") + key + "' must be an array of n rows");
  std::vector<std::vector<double>> out;
  out.reserve(n);
  for (const json& row : rows) {
    if (!row.is_array() || row.size() != n)
      throw Error(ErrorKind::ParseError, std::string("'") + key + "' rows must have n entries");
    std::vector<double> values;
    values.reserve(n);
    for (const json& v : row) {
      if (!v.is_number()) throw Error(ErrorKind::ParseError, std::string("'") + key + "' entries must be numbers");
      values.push_back(v.get<double>());
    }
    out.push_back(std::move(values));
  }
  return out;
}

}  // namespace

ComplexMatrix parse_matrix(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::ParseError, "matrix file must hold a JSON object");
  if (!j.contains("n") || !j.at("n").is_number_integer() || j.at("n").get<long long>() < 1)
    throw Error(ErrorKind::ParseError, "'n' must be a positive integer");
  const auto n = static_cast<std::size_t>(j.at("n").get<long long>());
  const auto re = read_block(j, "re", n);
  const auto im = read_block(j, "im", n);
  ComplexMatrix m(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = cplx(re[r][c], im[r][c]);
  if (!m.all_finite()) throw Error(ErrorKind::ParseError, "matrix entries must be finite");
  return m;
}

ComplexMatrix read_matrix(const std::filesystem::path& path) { return parse_matrix(read_text(path)); }

std::string matrix_to_json(const ComplexMatrix& m) {
  json re = json::array();
  json im = json::array();
  for (std::size_t r = 0; r < m.n(); ++r) {
    json rr = json::array();
    json ri = json::array();
    for (std::size_t c = 0; c < m.n(); ++c) {
      rr.push_back(m(r, c).real());
      ri.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  json j;
  j["n"] = m.n();
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j.dump();
}

std::string report_to_json(const RecurrenceReport& report) {
  json hits = json::array();
  for (const auto& h : report.hits) hits.push_back({{"T", h.period}, {"deviation", h.deviation}});
  json j;
  j["epsilon"] = report.epsilon;
  j["t_max"] = report.t_max;
  j["hits"] = std::move(hits);
  j["scanned_points"] = report.scanned_points;
  j["stationary"] = report.stationary;
  return j.dump(2);
}

RecurrenceReport report_from_json(std::string_view json_text) {
  try {
    const json j = json::parse(json_text);
    RecurrenceReport r;
    r.epsilon = j.at("epsilon").get<double>();
    r.t_max = j.at("t_max").get<double>();
    r.scanned_points = j.at("scanned_points").get<std::size_t>();
    r.stationary = j.value("stationary", false);
    for (const json& h : j.at("hits")) r.hits.push_back({h.at("T").get<double>(), h.at("deviation").get<double>()});
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::ParseError, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorKind::ParseError, "write failed for " + path.string());
}

}  // namespace qgeom::io
