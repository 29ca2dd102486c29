#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pkmeans/dataset.hpp"

namespace pkmeans {

// Shortest decimal form that round-trips the double exactly.
inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

inline bool parse_number(std::string_view tok, double& out) {
  tok = trim(tok);
  if (tok.empty()) return false;
  const char* begin = tok.data();
  const char* end = begin + tok.size();
  if (*begin == '+') ++begin;  // from_chars rejects a leading plus
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      out.push_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace detail

// Rectangular numeric table, one point per row. A single non-numeric first
// row is treated as a header and skipped.
inline Dataset parse_csv_text(std::string_view text, const std::string& origin) {
  std::vector<double> values;
  std::size_t dim = 0;
  std::size_t row = 0;
  std::size_t data_rows = 0;
  bool header_allowed = true;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos
                                                                          : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++row;
    if (detail::trim(line).empty()) continue;

    const auto fields = detail::split_fields(line);
    std::vector<double> parsed(fields.size());
    bool all_numeric = true;
    std::size_t bad_col = 0;
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (!detail::parse_number(fields[c], parsed[c])) {
        all_numeric = false;
        bad_col = c;
        break;
      }
    }

    if (!all_numeric) {
      if (header_allowed) {  // first contentful row may be a header
        header_allowed = false;
        continue;
      }
      throw std::runtime_error(origin + ": row " + std::to_string(row) + " column " +
                               std::to_string(bad_col + 1) + ": '" +
                               std::string(detail::trim(fields[bad_col])) +
                               "' is not numeric");
    }
    header_allowed = false;

    if (dim == 0) {
      dim = parsed.size();
    } else if (parsed.size() != dim) {
      throw std::runtime_error(origin + ": row " + std::to_string(row) + " has " +
                               std::to_string(parsed.size()) + " columns, expected " +
                               std::to_string(dim));
    }
    for (std::size_t c = 0; c < parsed.size(); ++c) {
      if (!std::isfinite(parsed[c]))
        throw std::runtime_error(origin + ": row " + std::to_string(row) + " column " +
                                 std::to_string(c + 1) + ": non-finite value");
      values.push_back(parsed[c]);
    }
    ++data_rows;
  }

  if (data_rows == 0) throw std::runtime_error(origin + ": no data rows");
  return Dataset(dim, std::move(values));
}

inline Dataset parse_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_csv_text(ss.str(), path);
}

inline void write_points_csv(const std::string& path, const Dataset& data,
                             bool header = false) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  if (header) {
    for (std::size_t j = 0; j < data.dim(); ++j) {
      if (j) out << ',';
      out << 'x' << j;
    }
    out << '\n';
  }
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto x = data.point(i);
    for (std::size_t j = 0; j < data.dim(); ++j) {
      if (j) out << ',';
      out << format_double(x[j]);
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace pkmeans
