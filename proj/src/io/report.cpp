#include "subdep/io.hpp"

#include <boost/integer/common_factor_rt.hpp>

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace subdep::io {

Json to_json(const ReportDocument& doc) {
  Json j;
  j["version"] = doc.version;
  j["command"] = doc.command;
  j["parameters"] = doc.parameters;
  j["results"] = doc.results;
  j["warnings"] = doc.warnings;
  return j;
}

ReportDocument report_from_json(const Json& j) {
  try {
    ReportDocument doc;
    doc.version = j.at("version").get<std::string>();
    doc.command = j.at("command").get<std::string>();
    doc.parameters = j.at("parameters");
    doc.results = j.at("results");
    doc.warnings = j.at("warnings").get<std::vector<std::string>>();
    return doc;
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed report document: ") + e.what());
  }
}

namespace {

Json point_json(const GridPoint& p) {
  Json j;
  j["i"] = p.i;
  j["j"] = p.j;
  j["u"] = p.u;
  j["v"] = p.v;
  return j;
}

void put_exact(Json& j, const char* key, const std::optional<Rational>& r) {
  if (r) j[key] = rational_string(*r);
}

}  // namespace

Json to_json(const DependenceReport& rep) {
  Json j;
  if (rep.sample) {
    j["n"] = rep.sample->n;
    j["dropped"] = rep.sample->dropped;
  }
  j["m1"] = rep.rows - 1;
  j["m2"] = rep.cols - 1;
  j["mu"] = rep.mu;
  put_exact(j, "mu_exact", rep.mu_exact);
  j["d_s"] = rep.d_s;
  put_exact(j, "d_s_exact", rep.d_s_exact);
  j["d_m"] = rep.d_m;
  put_exact(j, "d_m_exact", rep.d_m_exact);
  j["d_w"] = rep.d_w;
  put_exact(j, "d_w_exact", rep.d_w_exact);
  j["sup_pos"] = rep.sup_pos;
  j["sup_neg"] = rep.sup_neg;
  j["argmax_pos"] = point_json(rep.argmax_pos);
  j["argmax_neg"] = point_json(rep.argmax_neg);
  j["degenerate"] = rep.degenerate;
  return j;
}

Json to_json(const ValidationReport& rep) {
  Json j;
  j["valid"] = rep.ok();
  Json list = Json::array();
  for (const auto& v : rep.violations) {
    Json e;
    e["axiom"] = to_string(v.axiom);
    e["i"] = v.i;
    e["j"] = v.j;
    e["u"] = v.u;
    e["v"] = v.v;
    e["deficit"] = v.deficit;
    put_exact(e, "deficit_exact", v.exact_deficit);
    list.push_back(std::move(e));
  }
  j["violations"] = std::move(list);
  return j;
}

Json to_json(const Subcopula& s) {
  Json j;
  const std::size_t r = s.rows();
  const std::size_t c = s.cols();
  Json rows = Json::array();
  if (s.mode() == NumericMode::exact) {
    j["mode"] = "exact";
    j["denominator"] = s.denominator();
    j["d1"] = std::vector<std::int64_t>(s.d1().numerators().begin(), s.d1().numerators().end());
    j["d2"] = std::vector<std::int64_t>(s.d2().numerators().begin(), s.d2().numerators().end());
    for (std::size_t i = 0; i < r; ++i) {
      Json row = Json::array();
      for (std::size_t k = 0; k < c; ++k) row.push_back(s.numerator(i, k));
      rows.push_back(std::move(row));
    }
  } else {
    j["mode"] = "floating";
    for (std::size_t i = 0; i < r; ++i) {
      Json row = Json::array();
      for (std::size_t k = 0; k < c; ++k) row.push_back(s.value(i, k));
      rows.push_back(std::move(row));
    }
  }
  j["d1_levels"] = std::vector<double>(s.d1().levels().begin(), s.d1().levels().end());
  j["d2_levels"] = std::vector<double>(s.d2().levels().begin(), s.d2().levels().end());
  j["values"] = std::move(rows);
  return j;
}

Subcopula subcopula_from_json(const Json& j) {
  try {
    const auto mode = j.at("mode").get<std::string>();
    const auto& rows = j.at("values");
    if (!rows.is_array()) throw InputError("'values' must be an array of rows");
    if (mode == "exact") {
      const auto den = j.at("denominator").get<std::int64_t>();
      auto d1 = GridDomain::exact(j.at("d1").get<std::vector<std::int64_t>>(), den);
      auto d2 = GridDomain::exact(j.at("d2").get<std::vector<std::int64_t>>(), den);
      std::vector<std::int64_t> vals;
      for (const auto& row : rows) {
        if (row.size() != d2.size()) throw StructuralError("row length does not match d2");
        for (const auto& x : row) vals.push_back(x.get<std::int64_t>());
      }
      return Subcopula::exact(std::move(d1), std::move(d2), std::move(vals));
    }
    if (mode == "floating") {
      auto d1 = GridDomain::floating(j.at("d1_levels").get<std::vector<double>>());
      auto d2 = GridDomain::floating(j.at("d2_levels").get<std::vector<double>>());
      std::vector<double> vals;
      for (const auto& row : rows) {
        if (row.size() != d2.size()) throw StructuralError("row length does not match d2");
        for (const auto& x : row) vals.push_back(x.get<double>());
      }
      return Subcopula::floating(std::move(d1), std::move(d2), std::move(vals));
    }
    throw InputError("unknown subcopula mode '" + mode + "'");
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed subcopula document: ") + e.what());
  }
}

// ------------------------------------------------------------------ CSV dump

void write_subcopula_csv(std::ostream& out, const Subcopula& s) {
  const bool exact = s.mode() == NumericMode::exact;
  auto level = [&](const GridDomain& d, std::size_t k) {
    return exact ? rational_string(d.exact_level(k)) : format_double(d.level(k));
  };
  auto block = [&](const char* name, const GridDomain& d) {
    out << "# " << name << '\n';
    for (std::size_t k = 0; k < d.size(); ++k) out << (k ? "," : "") << level(d, k);
    out << '\n';
  };
  block("d1", s.d1());
  block("d2", s.d2());
  out << "# values\n";
  for (std::size_t i = 0; i < s.rows(); ++i) {
    for (std::size_t k = 0; k < s.cols(); ++k) {
      out << (k ? "," : "") << (exact ? rational_string(s.exact_value(i, k)) : format_double(s.value(i, k)));
    }
    out << '\n';
  }
}

namespace {

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto b = tok.find_first_not_of(" \t\r");
    const auto e = tok.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : tok.substr(b, e - b + 1));
  }
  return out;
}

bool exact_token(const std::string& t) {
  return !t.empty() && t.find_first_not_of("0123456789/-+") == std::string::npos;
}

double float_token(const std::string& t) {
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), x);
  if (ec != std::errc() || ptr != t.data() + t.size()) throw InputError("not a number: '" + t + "'");
  return x;
}

}  // namespace

Subcopula read_subcopula_csv(std::istream& in) {
  std::vector<std::string> d1;
  std::vector<std::string> d2;
  std::vector<std::vector<std::string>> rows;
  std::string section;
  std::string line;
  while (std::getline(in, line)) {
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    if (line[b] == '#') {
      std::stringstream ss(line.substr(b + 1));
      ss >> section;
      continue;
    }
    auto toks = split_commas(line);
    if (section == "d1") {
      d1 = std::move(toks);
    } else if (section == "d2") {
      d2 = std::move(toks);
    } else if (section == "values") {
      rows.push_back(std::move(toks));
    } else {
      throw InputError("data outside a '# d1', '# d2' or '# values' block");
    }
  }
  if (d1.empty() || d2.empty() || rows.empty()) throw InputError("subcopula CSV needs d1, d2 and values blocks");
  if (rows.size() != d1.size()) {
    throw StructuralError("values has " + std::to_string(rows.size()) + " rows, expected " +
                          std::to_string(d1.size()));
  }
  for (const auto& r : rows) {
    if (r.size() != d2.size()) {
      throw StructuralError("values row has " + std::to_string(r.size()) + " entries, expected " +
                            std::to_string(d2.size()));
    }
  }

  bool exact = true;
  auto scan = [&](const std::vector<std::string>& v) {
    for (const auto& t : v) exact = exact && exact_token(t);
  };
  scan(d1);
  scan(d2);
  for (const auto& r : rows) scan(r);

  if (exact) {
    std::vector<Rational> a;
    std::vector<Rational> b;
    std::vector<Rational> vals;
    std::int64_t den = 1;
    auto take = [&](const std::string& t, std::vector<Rational>& dst) {
      dst.push_back(parse_rational(t));
      den = boost::integer::lcm(den, dst.back().denominator());
      if (den > kMaxExactDenominator) throw InputError("common denominator too large for exact mode");
    };
    for (const auto& t : d1) take(t, a);
    for (const auto& t : d2) take(t, b);
    for (const auto& r : rows)
      for (const auto& t : r) take(t, vals);
    auto nums = [den](const std::vector<Rational>& v) {
      std::vector<std::int64_t> out;
      out.reserve(v.size());
      for (const auto& x : v) out.push_back(x.numerator() * (den / x.denominator()));
      return out;
    };
    return Subcopula::exact(GridDomain::exact(nums(a), den), GridDomain::exact(nums(b), den), nums(vals));
  }

  auto doubles = [](const std::vector<std::string>& v) {
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& t : v) out.push_back(float_token(t));
    return out;
  };
  std::vector<double> vals;
  for (const auto& r : rows) {
    auto d = doubles(r);
    vals.insert(vals.end(), d.begin(), d.end());
  }
  return Subcopula::floating(GridDomain::floating(doubles(d1)), GridDomain::floating(doubles(d2)),
                             std::move(vals));
}

Subcopula read_subcopula_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const auto text = buf.str();
  const auto b = text.find_first_not_of(" \t\r\n");
  if (b != std::string::npos && text[b] == '{') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::exception& e) {
      throw InputError(std::string("invalid JSON: ") + e.what());
    }
    // accept either a bare subcopula object or a report carrying one
    if (j.contains("results") && j["results"].contains("subcopula")) return subcopula_from_json(j["results"]["subcopula"]);
    return subcopula_from_json(j);
  }
  std::istringstream ss(text);
  return read_subcopula_csv(ss);
}

}  // namespace subdep::io
