#include "subdep/commands.hpp"

#include "subdep/empirical.hpp"
#include "subdep/stats_compare.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <random>
#include <sstream>

namespace subdep::cli {

using io::InputError;
using io::Json;
using io::ReportDocument;

namespace {

void add_sample_warnings(ReportDocument& doc, const DependenceReport& rep) {
  if (rep.sample && rep.sample->dropped > 0) {
    doc.warnings.push_back("dropped " + std::to_string(rep.sample->dropped) + " rows with missing values");
  }
  if (rep.degenerate) doc.warnings.push_back("degenerate domain (a constant variable): mu reported as 0");
}

}  // namespace

ReportDocument cmd_mu(const MuOptions& opt) {
  const auto ds = io::read_csv_file(opt.input, opt.na_token);
  std::vector<std::string> cols = opt.cols;
  if (cols.empty()) {
    if (ds.column_names.size() != 2) throw InputError("--cols is required unless the file has exactly two columns");
    cols = ds.column_names;
  }
  if (cols.size() != 2) throw InputError("--cols needs exactly two column names for 'mu'");

  const auto& x = ds.column(cols[0]);
  const auto& y = ds.column(cols[1]);
  std::optional<BivariateSample> sample;
  try {
    sample = BivariateSample::from_pairs(x, y);
  } catch (const EmptySampleError&) {
    throw InputError("columns '" + cols[0] + "' and '" + cols[1] + "' share no complete rows");
  }
  const auto rep = mu_empirical(*sample);

  ReportDocument doc;
  doc.command = "mu";
  doc.parameters["input"] = opt.input;
  doc.parameters["cols"] = cols;
  doc.parameters["na_token"] = opt.na_token;
  doc.parameters["dump_subcopula"] = opt.dump_subcopula;
  doc.results = io::to_json(rep);
  doc.results["tie_free"] = rep.rows == sample->n() + 1 && rep.cols == sample->n() + 1;
  if (opt.dump_subcopula) doc.results["subcopula"] = io::to_json(empirical_subcopula(*sample));
  add_sample_warnings(doc, rep);
  return doc;
}

ReportDocument cmd_matrix(const MatrixOptions& opt) {
  const auto ds = io::read_csv_file(opt.input, opt.na_token);
  const auto names = opt.cols.empty() ? ds.column_names : opt.cols;
  if (names.size() < 2) throw InputError("the dependence matrix needs at least two columns");
  std::vector<NamedColumn> columns;
  for (const auto& n : names) columns.push_back(NamedColumn{n, ds.column(n)});

  const auto m = dependence_matrix(columns, opt.threads);

  ReportDocument doc;
  doc.command = "matrix";
  doc.parameters["input"] = opt.input;
  doc.parameters["cols"] = names;
  doc.parameters["na_token"] = opt.na_token;
  doc.results["names"] = m.names;
  Json mu = Json::array();
  Json exact = Json::array();
  Json counts = Json::array();
  Json degenerate = Json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    Json r1 = Json::array(), r2 = Json::array(), r3 = Json::array(), r4 = Json::array();
    for (std::size_t j = 0; j < m.size(); ++j) {
      const auto& e = m.at(i, j);
      r1.push_back(e.available ? Json(e.mu) : Json(nullptr));
      r2.push_back(e.available && e.mu_exact ? Json(io::rational_string(*e.mu_exact)) : Json(nullptr));
      r3.push_back(e.n);
      r4.push_back(e.degenerate);
      if (j > i && !e.available) {
        doc.warnings.push_back("no complete rows for pair (" + m.names[i] + ", " + m.names[j] + "): entry unavailable");
      }
      if (j > i && e.degenerate) {
        doc.warnings.push_back("degenerate pair (" + m.names[i] + ", " + m.names[j] + "): mu reported as 0");
      }
    }
    mu.push_back(std::move(r1));
    exact.push_back(std::move(r2));
    counts.push_back(std::move(r3));
    degenerate.push_back(std::move(r4));
  }
  doc.results["mu"] = std::move(mu);
  doc.results["mu_exact"] = std::move(exact);
  doc.results["n"] = std::move(counts);
  doc.results["degenerate"] = std::move(degenerate);
  return doc;
}

namespace {

BivariateSample simulate_bernoulli(const BernoulliPairModel& m, std::size_t n, std::uint64_t seed) {
  const double t1 = boost::rational_cast<double>(m.theta1);
  const double t2 = boost::rational_cast<double>(m.theta2);
  const double a = boost::rational_cast<double>(m.alpha);
  const double p11 = a;
  const double p10 = t1 - a;
  const double p01 = t2 - a;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> x(n);
  std::vector<double> y(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double r = unif(rng);
    if (r < p11) {
      x[k] = 1;
      y[k] = 1;
    } else if (r < p11 + p10) {
      x[k] = 1;
    } else if (r < p11 + p10 + p01) {
      y[k] = 1;
    }
  }
  return BivariateSample::from_pairs(x, y);
}

}  // namespace

ReportDocument cmd_bernoulli(const BernoulliOptions& opt) {
  BernoulliPairModel m{io::parse_rational(opt.theta1), io::parse_rational(opt.theta2), io::parse_rational(opt.alpha)};
  m.check();

  const auto closed = bernoulli_mu_closed(m);
  const auto generic = mu_measure(bernoulli_subcopula(m));

  ReportDocument doc;
  doc.command = "bernoulli";
  doc.parameters["theta1"] = io::rational_string(m.theta1);
  doc.parameters["theta2"] = io::rational_string(m.theta2);
  doc.parameters["alpha"] = io::rational_string(m.alpha);
  doc.results["alpha_range"] = {io::rational_string(m.alpha_lower()), io::rational_string(m.alpha_upper())};
  doc.results["covariance"] = io::rational_string(m.alpha - m.theta1 * m.theta2);
  doc.results["mu_closed"] = boost::rational_cast<double>(closed);
  doc.results["mu_closed_exact"] = io::rational_string(closed);
  doc.results["generic"] = io::to_json(generic);
  doc.results["agree"] = generic.mu_exact && *generic.mu_exact == closed;
  doc.results["pearson"] = bernoulli_pearson(m);
  if (opt.sample_size) {
    if (*opt.sample_size == 0) throw InputError("--sample-size must be positive");
    const auto sample = simulate_bernoulli(m, *opt.sample_size, opt.seed);
    const auto rep = mu_empirical(sample);
    const auto r = pearson_sample(sample);
    Json sim;
    sim["n"] = sample.n();
    sim["seed"] = opt.seed;
    sim["mu"] = rep.mu;
    sim["mu_exact"] = io::rational_string(*rep.mu_exact);
    sim["pearson"] = r ? Json(*r) : Json(nullptr);
    doc.results["simulation"] = std::move(sim);
    doc.parameters["sample_size"] = *opt.sample_size;
    doc.parameters["seed"] = opt.seed;
    if (rep.degenerate) doc.warnings.push_back("simulated sample has a constant margin: mu reported as 0");
    if (!r) doc.warnings.push_back("simulated sample has a constant margin: Pearson r unavailable");
  }
  if (!doc.results["agree"].get<bool>()) throw io::NumericalFailure("closed form and grid computation disagree");
  return doc;
}

ReportDocument cmd_clayton_curve(const CurveOptions& opt) {
  if (opt.steps < 1) throw InputError("--steps must be at least 1");
  if (!(opt.theta_min >= -1.0) || !(opt.theta_max >= opt.theta_min) || !std::isfinite(opt.theta_max)) {
    throw InputError("need -1 <= theta-min <= theta-max < inf");
  }
  if (opt.numeric.resolution < 1) throw InputError("--resolution must be at least 1");
  if (!(opt.numeric.refine_tol > 0.0)) throw InputError("--refine-tol must be positive");

  const auto thetas = linspace(opt.theta_min, opt.theta_max, opt.steps);
  const auto rows = clayton_curve(thetas, opt.numeric, opt.quad_resolution, opt.threads);

  ReportDocument doc;
  doc.command = "clayton-curve";
  doc.parameters["theta_min"] = opt.theta_min;
  doc.parameters["theta_max"] = opt.theta_max;
  doc.parameters["steps"] = opt.steps;
  doc.parameters["resolution"] = opt.numeric.resolution;
  doc.parameters["refine_tol"] = opt.numeric.refine_tol;
  doc.parameters["quad_resolution"] = opt.quad_resolution;
  Json table = Json::array();
  for (const auto& r : rows) {
    Json row;
    row["theta"] = r.theta;
    row["mu"] = r.mu;
    row["tau"] = r.tau;
    row["rho"] = r.rho;
    row["precision_flag"] = r.precision_flag;
    row["theta_zero"] = r.theta_zero;
    table.push_back(std::move(row));
    if (r.precision_flag) doc.warnings.push_back("refinement did not converge at theta=" + io::format_double(r.theta));
    if (r.theta_zero) doc.warnings.push_back("theta=0 evaluated as the independence copula");
  }
  doc.results["rows"] = std::move(table);
  return doc;
}

ReportDocument cmd_validate(const ValidateOptions& opt) {
  const auto s = io::read_subcopula_file(opt.input);
  const auto report = validate(s, opt.tolerance);

  ReportDocument doc;
  doc.command = "validate";
  doc.parameters["input"] = opt.input;
  doc.parameters["tolerance"] = opt.tolerance;
  doc.results = io::to_json(report);
  doc.results["mode"] = s.mode() == NumericMode::exact ? "exact" : "floating";
  doc.results["rows"] = s.rows();
  doc.results["cols"] = s.cols();
  if (report.ok()) {
    const auto rep = mu_measure(s, opt.tolerance);
    doc.results["measure"] = io::to_json(rep);
    if (rep.degenerate) doc.warnings.push_back("degenerate domain: mu reported as 0");
  } else {
    doc.warnings.push_back(std::to_string(report.violations.size()) + " axiom violation(s)");
  }
  return doc;
}

// ----------------------------------------------------------------------- CSV

namespace {

std::string cell(const Json& v) {
  if (v.is_null()) return "NA";
  if (v.is_string()) return v.get<std::string>();
  return io::dump_json(v, -1);
}

void key_values(std::ostringstream& os, const Json& obj, const std::string& prefix) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (it.value().is_object()) {
      key_values(os, it.value(), prefix + it.key() + ".");
    } else if (!it.value().is_array()) {
      os << prefix << it.key() << ',' << cell(it.value()) << '\n';
    }
  }
}

}  // namespace

std::string to_csv(const ReportDocument& doc) {
  std::ostringstream os;
  const auto& r = doc.results;
  if (doc.command == "matrix") {
    os << "name";
    for (const auto& n : r["names"]) os << ',' << n.get<std::string>();
    os << '\n';
    for (std::size_t i = 0; i < r["names"].size(); ++i) {
      os << r["names"][i].get<std::string>();
      for (const auto& v : r["mu"][i]) os << ',' << cell(v);
      os << '\n';
    }
  } else if (doc.command == "clayton-curve") {
    os << "theta,mu,tau,rho,precision_flag,theta_zero\n";
    for (const auto& row : r["rows"]) {
      os << cell(row["theta"]) << ',' << cell(row["mu"]) << ',' << cell(row["tau"]) << ',' << cell(row["rho"]) << ','
         << cell(row["precision_flag"]) << ',' << cell(row["theta_zero"]) << '\n';
    }
  } else if (doc.command == "validate") {
    os << "axiom,i,j,u,v,deficit\n";
    for (const auto& v : r["violations"]) {
      os << cell(v["axiom"]) << ',' << cell(v["i"]) << ',' << cell(v["j"]) << ',' << cell(v["u"]) << ','
         << cell(v["v"]) << ',' << cell(v["deficit"]) << '\n';
    }
  } else {
    os << "key,value\n";
    Json flat = r;
    flat.erase("subcopula");
    key_values(os, flat, "");
    if (r.contains("subcopula")) {
      os << '\n';
      io::write_subcopula_csv(os, io::subcopula_from_json(r["subcopula"]));
    }
  }
  return os.str();
}

unsigned threads_from_env() {
  const char* env = std::getenv("SUBDEP_THREADS");
  if (env == nullptr) return 1;
  unsigned v = 0;
  const std::string_view s(env);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return 1;
  return v;
}

}  // namespace subdep::cli
