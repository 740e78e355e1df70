#include "subdep/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <set>

namespace subdep::io {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

// RFC 4180-ish: double quotes enclose a field, "" is an escaped quote.
std::vector<std::string> split_line(std::string_view line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char c = line[k];
    if (quoted) {
      if (c == '"') {
        if (k + 1 < line.size() && line[k + 1] == '"') {
          cur.push_back('"');
          ++k;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (quoted) throw InputError("unterminated quote on line " + std::to_string(line_no));
  fields.emplace_back(trim(cur));
  return fields;
}

double parse_number(std::string_view tok, std::size_t line_no, const std::string& col) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  double x = 0.0;
  const auto* first = tok.data();
  const auto* last = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(first, last, x);
  if (ec == std::errc::result_out_of_range) {
    // from_chars leaves x untouched on overflow; saturate like strtod
    return tok.front() == '-' ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::infinity();
  }
  if (ec != std::errc() || ptr != last) {
    throw InputError("line " + std::to_string(line_no) + ", column '" + col + "': not a number: '" +
                     std::string(tok) + "'");
  }
  return x;
}

}  // namespace

const std::vector<double>& Dataset::column(std::string_view name) const {
  for (std::size_t k = 0; k < column_names.size(); ++k) {
    if (column_names[k] == name) return columns[k];
  }
  throw InputError("no column named '" + std::string(name) + "'");
}

Dataset read_csv(std::istream& in, const std::string& na_token) {
  Dataset ds;
  ds.na_token = na_token;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_line(line, line_no);
    if (!have_header) {
      std::set<std::string> seen;
      for (const auto& f : fields) {
        if (f.empty()) throw InputError("empty column name in header");
        if (!seen.insert(f).second) throw InputError("duplicate column name '" + f + "'");
      }
      ds.column_names = std::move(fields);
      ds.columns.resize(ds.column_names.size());
      have_header = true;
      continue;
    }
    if (fields.size() != ds.column_names.size()) {
      throw InputError("line " + std::to_string(line_no) + " has " + std::to_string(fields.size()) +
                       " fields, expected " + std::to_string(ds.column_names.size()));
    }
    for (std::size_t k = 0; k < fields.size(); ++k) {
      const auto& f = fields[k];
      const bool missing = f.empty() || f == na_token;
      ds.columns[k].push_back(missing ? std::numeric_limits<double>::quiet_NaN()
                                      : parse_number(f, line_no, ds.column_names[k]));
    }
  }
  if (!have_header) throw InputError("CSV input is empty");
  return ds;
}

Dataset read_csv_file(const std::string& path, const std::string& na_token) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return read_csv(in, na_token);
}

}  // namespace subdep::io
