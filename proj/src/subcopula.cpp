#include "subdep/subcopula.hpp"

#include "measure_detail.hpp"

#include <boost/integer/common_factor_rt.hpp>

#include <cmath>
#include <sstream>

namespace subdep {

namespace {

void require_exact(const GridDomain& d, const char* what) {
  if (d.mode() != NumericMode::exact) {
    throw StructuralError(std::string(what) + " requires an exact-mode grid");
  }
}

bool checked_mul(std::int64_t a, std::int64_t b, std::int64_t& out) {
  return !__builtin_mul_overflow(a, b, &out);
}

}  // namespace

// ---------------------------------------------------------------- GridDomain

GridDomain GridDomain::exact(std::vector<std::int64_t> numerators, std::int64_t denominator) {
  if (denominator < 1 || denominator > kMaxExactDenominator) {
    throw StructuralError("exact grid denominator out of range: " + std::to_string(denominator));
  }
  if (numerators.size() < 2) throw StructuralError("grid needs at least the levels 0 and 1");
  if (numerators.front() != 0 || numerators.back() != denominator) {
    throw StructuralError("grid must start at 0 and end at 1");
  }
  for (std::size_t i = 1; i < numerators.size(); ++i) {
    if (numerators[i] <= numerators[i - 1]) throw StructuralError("grid levels must be strictly increasing");
  }
  GridDomain g;
  g.mode_ = NumericMode::exact;
  g.denominator_ = denominator;
  g.levels_.reserve(numerators.size());
  for (auto k : numerators) g.levels_.push_back(static_cast<double>(k) / static_cast<double>(denominator));
  g.numerators_ = std::move(numerators);
  return g;
}

GridDomain GridDomain::floating(std::vector<double> levels) {
  if (levels.size() < 2) throw StructuralError("grid needs at least the levels 0 and 1");
  if (levels.front() != 0.0 || levels.back() != 1.0) throw StructuralError("grid must start at 0 and end at 1");
  for (std::size_t i = 1; i < levels.size(); ++i) {
    if (!(levels[i] > levels[i - 1])) throw StructuralError("grid levels must be strictly increasing");
  }
  GridDomain g;
  g.mode_ = NumericMode::floating;
  g.levels_ = std::move(levels);
  return g;
}

GridDomain GridDomain::uniform(std::size_t intervals) {
  if (intervals < 1) throw StructuralError("uniform grid needs at least one interval");
  std::vector<double> lv(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) lv[i] = static_cast<double>(i) / static_cast<double>(intervals);
  lv.back() = 1.0;
  return floating(std::move(lv));
}

std::span<const std::int64_t> GridDomain::numerators() const {
  require_exact(*this, "numerators()");
  return numerators_;
}

std::int64_t GridDomain::denominator() const {
  require_exact(*this, "denominator()");
  return denominator_;
}

Rational GridDomain::exact_level(std::size_t i) const {
  require_exact(*this, "exact_level()");
  return Rational(numerators_.at(i), denominator_);
}

bool GridDomain::contains_half() const {
  if (mode_ == NumericMode::exact) {
    if (denominator_ % 2 != 0) return false;
    return std::binary_search(numerators_.begin(), numerators_.end(), denominator_ / 2);
  }
  return std::binary_search(levels_.begin(), levels_.end(), 0.5);
}

GridDomain GridDomain::rescaled(std::int64_t factor) const {
  require_exact(*this, "rescaled()");
  std::int64_t den = 0;
  if (factor < 1 || !checked_mul(denominator_, factor, den) || den > kMaxExactDenominator) {
    throw std::overflow_error("rescaled grid denominator leaves exact range");
  }
  std::vector<std::int64_t> nums(numerators_);
  for (auto& k : nums) k *= factor;
  return exact(std::move(nums), den);
}

GridDomain GridDomain::as_floating() const {
  if (mode_ == NumericMode::floating) return *this;
  auto lv = levels_;
  lv.front() = 0.0;
  lv.back() = 1.0;
  return floating(std::move(lv));
}

void unify_denominators(GridDomain& d1, GridDomain& d2) {
  require_exact(d1, "unify_denominators()");
  require_exact(d2, "unify_denominators()");
  const auto a = d1.denominator();
  const auto b = d2.denominator();
  if (a == b) return;
  const auto g = boost::integer::gcd(a, b);
  d1 = d1.rescaled(b / g);
  d2 = d2.rescaled(a / g);
}

// ----------------------------------------------------------------- Subcopula

Subcopula Subcopula::exact(GridDomain d1, GridDomain d2, std::vector<std::int64_t> numerators) {
  require_exact(d1, "Subcopula::exact");
  require_exact(d2, "Subcopula::exact");
  if (d1.denominator() != d2.denominator()) throw StructuralError("domains use different denominators");
  if (numerators.size() != d1.size() * d2.size()) {
    std::ostringstream os;
    os << "value matrix has " << numerators.size() << " entries, expected " << d1.size() << "x" << d2.size();
    throw StructuralError(os.str());
  }
  Subcopula s(std::move(d1), std::move(d2));
  s.numerators_ = std::move(numerators);
  return s;
}

Subcopula Subcopula::floating(GridDomain d1, GridDomain d2, std::vector<double> values) {
  if (d1.mode() != NumericMode::floating || d2.mode() != NumericMode::floating) {
    throw StructuralError("Subcopula::floating requires floating grids");
  }
  if (values.size() != d1.size() * d2.size()) {
    std::ostringstream os;
    os << "value matrix has " << values.size() << " entries, expected " << d1.size() << "x" << d2.size();
    throw StructuralError(os.str());
  }
  for (double x : values) {
    if (!std::isfinite(x)) throw StructuralError("subcopula values must be finite");
  }
  Subcopula s(std::move(d1), std::move(d2));
  s.values_ = std::move(values);
  return s;
}

double Subcopula::value(std::size_t i, std::size_t j) const {
  const auto k = i * cols() + j;
  if (mode() == NumericMode::exact) {
    return static_cast<double>(numerators_.at(k)) / static_cast<double>(denominator());
  }
  return values_.at(k);
}

std::int64_t Subcopula::numerator(std::size_t i, std::size_t j) const {
  require_exact(d1_, "numerator()");
  return numerators_.at(i * cols() + j);
}

Rational Subcopula::exact_value(std::size_t i, std::size_t j) const {
  return Rational(numerator(i, j), denominator());
}

std::span<const std::int64_t> Subcopula::numerators() const {
  require_exact(d1_, "numerators()");
  return numerators_;
}

std::span<const double> Subcopula::values() const {
  if (mode() != NumericMode::floating) throw StructuralError("values() requires a floating subcopula");
  return values_;
}

std::string to_string(Axiom a) {
  switch (a) {
    case Axiom::grounded: return "grounded";
    case Axiom::margins: return "margins";
    case Axiom::two_increasing: return "two_increasing";
    case Axiom::frechet_hoeffding: return "frechet_hoeffding";
  }
  return "unknown";
}

// ---------------------------------------------------------------- validation

namespace {

// Reports each failed check through `emit(axiom, i, j, deficit)` with deficit > tol.
template <class T, class Value, class Emit>
void check_axioms(const Subcopula& s, std::span<const T> u, std::span<const T> v, T one, Value value,
                  T tol, Emit emit) {
  const std::size_t r = s.rows();
  const std::size_t c = s.cols();
  for (std::size_t j = 0; j < c; ++j) {
    const T x = value(0, j);
    if (x > tol || -x > tol) emit(Axiom::grounded, 0, j, x < 0 ? -x : x);
  }
  for (std::size_t i = 1; i < r; ++i) {
    const T x = value(i, 0);
    if (x > tol || -x > tol) emit(Axiom::grounded, i, 0, x < 0 ? -x : x);
  }
  for (std::size_t i = 1; i < r; ++i) {
    const T x = value(i, c - 1) - u[i];
    if (x > tol || -x > tol) emit(Axiom::margins, i, c - 1, x < 0 ? -x : x);
  }
  for (std::size_t j = 1; j + 1 < c; ++j) {
    const T x = value(r - 1, j) - v[j];
    if (x > tol || -x > tol) emit(Axiom::margins, r - 1, j, x < 0 ? -x : x);
  }
  for (std::size_t i = 0; i + 1 < r; ++i) {
    for (std::size_t j = 0; j + 1 < c; ++j) {
      const T vol = value(i + 1, j + 1) - value(i + 1, j) - value(i, j + 1) + value(i, j);
      if (-vol > tol) emit(Axiom::two_increasing, i, j, -vol);
    }
  }
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      const T x = value(i, j);
      const T upper = std::min(u[i], v[j]);
      const T lower = std::max<T>(u[i] + v[j] - one, T{0});
      if (x - upper > tol) emit(Axiom::frechet_hoeffding, i, j, x - upper);
      else if (lower - x > tol) emit(Axiom::frechet_hoeffding, i, j, lower - x);
    }
  }
}

}  // namespace

ValidationReport validate(const Subcopula& s, double tolerance) {
  ValidationReport report;
  auto push = [&](Axiom a, std::size_t i, std::size_t j, double deficit, std::optional<Rational> exact) {
    report.violations.push_back(Violation{a, i, j, s.d1().level(i), s.d2().level(j), deficit, exact});
  };
  if (s.mode() == NumericMode::exact) {
    const auto den = s.denominator();
    const auto nums = s.numerators();
    const std::size_t c = s.cols();
    check_axioms<std::int64_t>(
        s, s.d1().numerators(), s.d2().numerators(), den,
        [&](std::size_t i, std::size_t j) { return nums[i * c + j]; }, std::int64_t{0},
        [&](Axiom a, std::size_t i, std::size_t j, std::int64_t deficit) {
          push(a, i, j, static_cast<double>(deficit) / static_cast<double>(den), Rational(deficit, den));
        });
  } else {
    const auto vals = s.values();
    const std::size_t c = s.cols();
    check_axioms<double>(
        s, s.d1().levels(), s.d2().levels(), 1.0, [&](std::size_t i, std::size_t j) { return vals[i * c + j]; },
        tolerance, [&](Axiom a, std::size_t i, std::size_t j, double deficit) { push(a, i, j, deficit, std::nullopt); });
  }
  return report;
}

// -------------------------------------------------------------- restrictions

Subcopula restrict(BoundKind kind, GridDomain d1, GridDomain d2) {
  if (d1.mode() != d2.mode()) throw StructuralError("restrict() needs both grids in the same numeric mode");
  const std::size_t r = d1.size();
  const std::size_t c = d2.size();

  if (d1.mode() == NumericMode::floating) {
    std::vector<double> vals(r * c);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) {
        const double u = d1.level(i);
        const double v = d2.level(j);
        double x = 0.0;
        switch (kind) {
          case BoundKind::M: x = std::min(u, v); break;
          case BoundKind::W: x = std::max(u + v - 1.0, 0.0); break;
          case BoundKind::Pi: x = u * v; break;
        }
        vals[i * c + j] = x;
      }
    }
    return Subcopula::floating(std::move(d1), std::move(d2), std::move(vals));
  }

  unify_denominators(d1, d2);
  const auto den = d1.denominator();
  const std::vector<std::int64_t> u(d1.numerators().begin(), d1.numerators().end());
  const std::vector<std::int64_t> v(d2.numerators().begin(), d2.numerators().end());
  if (kind == BoundKind::Pi) {
    // u v needs den^2 as the common denominator
    d1 = d1.rescaled(den);
    d2 = d2.rescaled(den);
  }
  std::vector<std::int64_t> nums(r * c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      std::int64_t x = 0;
      switch (kind) {
        case BoundKind::M: x = std::min(u[i], v[j]); break;
        case BoundKind::W: x = std::max<std::int64_t>(u[i] + v[j] - den, 0); break;
        case BoundKind::Pi: x = u[i] * v[j]; break;
      }
      nums[i * c + j] = x;
    }
  }
  return Subcopula::exact(std::move(d1), std::move(d2), std::move(nums));
}

Subcopula transpose(const Subcopula& s) {
  const std::size_t r = s.rows();
  const std::size_t c = s.cols();
  if (s.mode() == NumericMode::exact) {
    std::vector<std::int64_t> t(r * c);
    const auto src = s.numerators();
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) t[j * r + i] = src[i * c + j];
    return Subcopula::exact(s.d2(), s.d1(), std::move(t));
  }
  std::vector<double> t(r * c);
  const auto src = s.values();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) t[j * r + i] = src[i * c + j];
  return Subcopula::floating(s.d2(), s.d1(), std::move(t));
}

// ------------------------------------------------------------------ measures

namespace detail {

namespace {

void set_points(DependenceReport& rep, const GridDomain& d1, const GridDomain& d2, std::size_t pi, std::size_t pj,
                std::size_t ni, std::size_t nj) {
  rep.argmax_pos = GridPoint{pi, pj, d1.level(pi), d2.level(pj)};
  rep.argmax_neg = GridPoint{ni, nj, d1.level(ni), d2.level(nj)};
  rep.rows = d1.size();
  rep.cols = d2.size();
}

}  // namespace

DependenceReport finish_exact(const GridDomain& d1, const GridDomain& d2, const DiffScan<std::int64_t>& scan,
                              bool with_bounds) {
  DependenceReport rep;
  set_points(rep, d1, d2, scan.pos_i, scan.pos_j, scan.neg_i, scan.neg_j);
  const std::int64_t den = d1.denominator();
  const std::int64_t den2 = den * den;
  const std::int64_t ds = scan.sup_pos - scan.sup_neg;
  rep.d_s_exact = Rational(ds, den2);
  rep.d_s = boost::rational_cast<double>(*rep.d_s_exact);
  rep.sup_pos = boost::rational_cast<double>(Rational(scan.sup_pos, den2));
  rep.sup_neg = boost::rational_cast<double>(Rational(scan.sup_neg, den2));
  if (!with_bounds) return rep;

  const auto b = bound_sups<std::int64_t>(d1.numerators(), d2.numerators(), den);
  rep.d_m_exact = Rational(b.m_minus_pi, den2);
  rep.d_w_exact = Rational(-b.pi_minus_w, den2);
  rep.d_m = boost::rational_cast<double>(*rep.d_m_exact);
  rep.d_w = boost::rational_cast<double>(*rep.d_w_exact);
  rep.degenerate = d1.trivial() || d2.trivial();
  if (rep.degenerate) {
    rep.mu_exact = Rational(0);
  } else if (ds >= 0) {
    rep.mu_exact = Rational(ds, b.m_minus_pi);
  } else {
    rep.mu_exact = Rational(ds, b.pi_minus_w);
  }
  rep.mu = boost::rational_cast<double>(*rep.mu_exact);
  return rep;
}

DependenceReport finish_floating(const GridDomain& d1, const GridDomain& d2, const DiffScan<double>& scan,
                                 bool with_bounds) {
  DependenceReport rep;
  set_points(rep, d1, d2, scan.pos_i, scan.pos_j, scan.neg_i, scan.neg_j);
  rep.sup_pos = scan.sup_pos;
  rep.sup_neg = scan.sup_neg;
  rep.d_s = scan.sup_pos - scan.sup_neg;
  if (!with_bounds) return rep;

  const auto b = bound_sups<double>(d1.levels(), d2.levels(), 1.0);
  rep.d_m = b.m_minus_pi;
  rep.d_w = -b.pi_minus_w;
  rep.degenerate = d1.trivial() || d2.trivial();
  if (rep.degenerate) {
    rep.mu = 0.0;
  } else if (rep.d_s >= 0.0) {
    rep.mu = rep.d_s / rep.d_m;
  } else {
    rep.mu = rep.d_s / b.pi_minus_w;
  }
  return rep;
}

}  // namespace detail

namespace {

DependenceReport measure(const Subcopula& s, double tolerance, bool with_bounds) {
  const auto check = validate(s, tolerance);
  if (!check.ok()) {
    const auto& v = check.violations.front();
    std::ostringstream os;
    os << "not a valid subcopula: " << to_string(v.axiom) << " violated at (" << v.u << ", " << v.v
       << "), deficit " << v.deficit;
    throw AxiomError(os.str());
  }
  const std::size_t r = s.rows();
  const std::size_t c = s.cols();
  if (s.mode() == NumericMode::exact) {
    const auto u = s.d1().numerators();
    const auto v = s.d2().numerators();
    const auto den = s.denominator();
    const auto nums = s.numerators();
    detail::DiffScan<std::int64_t> scan;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) scan.offer(detail::scaled_diff(nums[i * c + j], u[i], v[j], den), i, j);
    return detail::finish_exact(s.d1(), s.d2(), scan, with_bounds);
  }
  const auto u = s.d1().levels();
  const auto v = s.d2().levels();
  const auto vals = s.values();
  detail::DiffScan<double> scan;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) scan.offer(detail::scaled_diff(vals[i * c + j], u[i], v[j], 1.0), i, j);
  return detail::finish_floating(s.d1(), s.d2(), scan, with_bounds);
}

}  // namespace

DependenceReport d_measure(const Subcopula& s, double tolerance) { return measure(s, tolerance, false); }

DependenceReport mu_measure(const Subcopula& s, double tolerance) { return measure(s, tolerance, true); }

}  // namespace subdep
