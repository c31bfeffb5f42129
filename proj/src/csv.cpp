// SPDX-License-Identifier: Apache-2.0
#include "tlsw/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>

namespace tlsw::io {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  for (;;) {
    const auto comma = line.find(',', pos);
    out.push_back(trim(line.substr(pos, comma == std::string_view::npos ? line.npos : comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::optional<double> parse_double(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open '" + path.string() + "'");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!trim(line).empty()) lines.push_back(line);
  }
  if (in.bad()) throw Error(Errc::Io, "error reading '" + path.string() + "'");
  return lines;
}

// Parses every field of a row; nullopt if any field is not numeric.
std::optional<std::vector<double>> numeric_row(std::string_view line) {
  std::vector<double> row;
  for (auto field : split(line)) {
    auto v = parse_double(field);
    if (!v) return std::nullopt;
    row.push_back(*v);
  }
  return row;
}

std::string location(const std::filesystem::path& path, std::size_t line) {
  return "'" + path.string() + "' line " + std::to_string(line + 1);
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

VectorXd read_series(const std::filesystem::path& path) {
  const auto lines = read_lines(path);
  std::vector<double> values;
  std::size_t columns = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto row = numeric_row(lines[i]);
    if (!row) {
      if (i == 0 && values.empty()) {
        columns = split(lines[i]).size();
        continue;  // header
      }
      throw Error(Errc::InvalidArgument, "non-numeric value at " + location(path, i));
    }
    if (columns == 0) columns = row->size();
    if (row->size() != columns || columns > 2) {
      throw Error(Errc::InvalidArgument, "expected 1 or 2 consistent columns at " + location(path, i));
    }
    const double v = row->back();
    if (!std::isfinite(v)) throw Error(Errc::InvalidArgument, "non-finite value at " + location(path, i));
    values.push_back(v);
  }
  return Eigen::Map<const VectorXd>(values.data(), static_cast<Index>(values.size()));
}

MatrixXd read_matrix(const std::filesystem::path& path) {
  const auto lines = read_lines(path);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto row = numeric_row(lines[i]);
    if (!row) throw Error(Errc::InvalidArgument, "non-numeric value at " + location(path, i));
    if (!rows.empty() && row->size() != rows.front().size()) {
      throw Error(Errc::InvalidArgument, "ragged matrix at " + location(path, i));
    }
    rows.push_back(std::move(*row));
  }
  MatrixXd m(static_cast<Index>(rows.size()), rows.empty() ? 0 : static_cast<Index>(rows.front().size()));
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) m(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  }
  return m;
}

void write_text_atomic(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::Io, "cannot write '" + tmp.string() + "'");
    out << contents;
    out.flush();
    if (!out) throw Error(Errc::Io, "error writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(Errc::Io, "cannot rename to '" + path.string() + "': " + ec.message());
}

std::string series_csv(const VectorXd& values) {
  std::string out = "t,value\n";
  for (Index t = 0; t < values.size(); ++t) {
    out += std::to_string(t);
    out += ',';
    out += format_double(values(t));
    out += '\n';
  }
  return out;
}

std::string matrix_csv(const MatrixXd& m) {
  std::string out;
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      if (c > 0) out += ',';
      out += format_double(m(r, c));
    }
    out += '\n';
  }
  return out;
}

std::string trend_csv(const VectorXd& estimate, const std::optional<VectorXd>& lo,
                      const std::optional<VectorXd>& hi) {
  std::string out = "t,estimate,lo,hi\n";
  for (Index t = 0; t < estimate.size(); ++t) {
    out += std::to_string(t);
    out += ',';
    out += format_double(estimate(t));
    out += ',';
    if (lo) out += format_double((*lo)(t));
    out += ',';
    if (hi) out += format_double((*hi)(t));
    out += '\n';
  }
  return out;
}

TrendTable read_trend_csv(const std::filesystem::path& path) {
  const auto lines = read_lines(path);
  std::vector<double> est;
  std::vector<double> lo;
  std::vector<double> hi;
  bool has_ci = true;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split(lines[i]);
    if (fields.size() != 4) throw Error(Errc::InvalidArgument, "expected 4 columns at " + location(path, i));
    const auto e = parse_double(fields[1]);
    if (!e) throw Error(Errc::InvalidArgument, "bad estimate at " + location(path, i));
    est.push_back(*e);
    const auto l = parse_double(fields[2]);
    const auto h = parse_double(fields[3]);
    if (l && h) {
      lo.push_back(*l);
      hi.push_back(*h);
    } else {
      has_ci = false;
    }
  }
  auto to_vec = [](const std::vector<double>& v) {
    return VectorXd(Eigen::Map<const VectorXd>(v.data(), static_cast<Index>(v.size())));
  };
  TrendTable table;
  table.estimate = to_vec(est);
  if (has_ci && !est.empty()) {
    table.lo = to_vec(lo);
    table.hi = to_vec(hi);
  }
  return table;
}

}  // namespace tlsw::io
