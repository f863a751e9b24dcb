#include "spectra/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "spectra/error.hpp"

namespace spectra {

namespace {

double parse_double(std::string_view field) {
  while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
  while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r')) {
    field.remove_suffix(1);
  }
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw Error(ErrorKind::ParseError, "not a number: '" + std::string(field) + "'");
  }
  return v;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string matrix_csv(const RowMatrix& m) {
  std::string out;
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += format_double(m(i, j));
    }
    out += '\n';
  }
  return out;
}

RowMatrix parse_matrix_csv(std::string_view text) {
  std::vector<std::vector<double>> rows;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    std::vector<double> row;
    std::size_t f = 0;
    while (true) {
      const std::size_t comma = line.find(',', f);
      row.push_back(parse_double(line.substr(f, comma == std::string_view::npos ? line.npos : comma - f)));
      if (comma == std::string_view::npos) break;
      f = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw Error(ErrorKind::ParseError, "ragged matrix CSV");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(ErrorKind::ParseError, "empty matrix CSV");
  RowMatrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return m;
}

std::string intervals_csv(const std::vector<BoundInterval>& intervals) {
  std::string out = "index,lower,upper,epsilon,theorem,failure_prob,vacuous_lower\n";
  for (const auto& b : intervals) {
    out += std::to_string(b.index) + ',' + format_double(b.lower) + ',' + format_double(b.upper) + ',' +
           format_double(b.epsilon) + ',' + std::string(to_string(b.theorem)) + ',' +
           (b.is_expectation() ? std::string("expectation") : format_double(b.failure_prob)) + ',' +
           (b.vacuous_lower ? "true" : "false") + '\n';
  }
  return out;
}

std::string sandwich_csv(const std::vector<SandwichResult>& results) {
  std::string out = "index,lower,middle,upper,regime\n";
  for (const auto& r : results) {
    out += std::to_string(r.index) + ',' + format_double(r.lower) + ',' + format_double(r.middle) + ',' +
           format_double(r.upper) + ',' + std::string(to_string(r.regime)) + '\n';
  }
  return out;
}

std::string coverage_summary_csv(const std::vector<CoverageReport>& reports) {
  std::string out =
      "theorem,t,epsilon,theoretical_failure,empirical_failure,wilson_halfwidth,failures,trials\n";
  for (const auto& r : reports) {
    out += std::string(to_string(r.theorem)) + ',' + format_double(r.t) + ',' + format_double(r.epsilon) +
           ',' + format_double(r.theoretical_failure) + ',' + format_double(r.empirical_failure) + ',' +
           format_double(r.wilson_halfwidth) + ',' + std::to_string(r.failures) + ',' +
           std::to_string(r.trials) + '\n';
  }
  return out;
}

std::string coverage_index_csv(const std::vector<CoverageReport>& reports) {
  std::string out = "theorem,t,index,violations\n";
  for (const auto& r : reports) {
    for (std::size_t i = 0; i < r.per_index_violations.size(); ++i) {
      out += std::string(to_string(r.theorem)) + ',' + format_double(r.t) + ',' + std::to_string(i + 1) +
             ',' + std::to_string(r.per_index_violations[i]) + '\n';
    }
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorKind::IoError, "write failed for " + path.string());
}

}  // namespace spectra
