// Acceptance checks. One PASS/FAIL line per criterion; nonzero exit if any
// criterion fails, so ctest sees a single verdict.

#include "subdep/empirical.hpp"
#include "subdep/parallel.hpp"
#include "subdep/parametric.hpp"
#include "subdep/subcopula.hpp"

#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace subdep;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

/// Records the first few failures; later ones only count.
class Tally {
 public:
  void fail(const std::string& what) {
    ++failures_;
    if (failures_ <= 3) notes_ << (failures_ > 1 ? "; " : "") << what;
  }
  Outcome done(const std::string& ok_detail) const {
    if (failures_ == 0) return {true, ok_detail};
    std::ostringstream os;
    os << failures_ << " failure(s): " << notes_.str();
    return {false, os.str()};
  }

 private:
  int failures_ = 0;
  std::ostringstream notes_;
};

std::string str(const Rational& r) {
  std::ostringstream os;
  os << r.numerator() << '/' << r.denominator();
  return os.str();
}

int sign(double x) { return (x > 0) - (x < 0); }

BivariateSample pairs(const std::vector<double>& x, const std::vector<double>& y) {
  return BivariateSample::from_pairs(x, y);
}

Rational exact_mu(const std::vector<double>& x, const std::vector<double>& y) {
  return *mu_empirical(pairs(x, y)).mu_exact;
}

// ------------------------------------------------------------------------ 1

Outcome bernoulli_exactness() {
  Tally t;
  std::mt19937_64 rng(1001);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::int64_t den = std::uniform_int_distribution<std::int64_t>(2, 10000)(rng);
    std::uniform_int_distribution<std::int64_t> num(1, den - 1);
    const Rational t1(num(rng), den), t2(num(rng), den);
    const Rational lo = std::max(t1 + t2 - 1, Rational(0)), hi = std::min(t1, t2);
    const Rational a(std::uniform_int_distribution<std::int64_t>((lo * den).numerator(), (hi * den).numerator())(rng),
                     den);
    const BernoulliPairModel m{t1, t2, a};
    const Rational grid = *mu_measure(bernoulli_subcopula(m), 0.0).mu_exact;
    const Rational closed = bernoulli_mu_closed(m);
    if (grid != closed) t.fail("(" + str(t1) + "," + str(t2) + "," + str(a) + "): " + str(grid) + " vs " + str(closed));
  }

  // the three landmark rows for several margin pairs
  const std::vector<std::pair<Rational, Rational>> margins = {
      {Rational(1, 2), Rational(1, 2)}, {Rational(3, 10), Rational(6, 10)}, {Rational(2, 10), Rational(7, 10)},
      {Rational(7, 10), Rational(6, 10)}, {Rational(1, 3), Rational(1, 3)}};
  for (const auto& [t1, t2] : margins) {
    const BernoulliPairModel top{t1, t2, std::min(t1, t2)};
    const BernoulliPairModel ind{t1, t2, t1 * t2};
    const BernoulliPairModel bot{t1, t2, std::max(t1 + t2 - 1, Rational(0))};
    const std::pair<const BernoulliPairModel*, Rational> rows[] = {{&top, Rational(1)}, {&ind, Rational(0)},
                                                                   {&bot, Rational(-1)}};
    for (const auto& [m, want] : rows) {
      if (*mu_measure(bernoulli_subcopula(*m), 0.0).mu_exact != want || bernoulli_mu_closed(*m) != want)
        t.fail("landmark row (" + str(t1) + "," + str(t2) + ")");
      const double r = bernoulli_pearson(*m);
      if (t1 != t2 && want != Rational(0) && !(r > -1.0 && r < 1.0))
        t.fail("Pearson not strictly inside (-1,1) at (" + str(t1) + "," + str(t2) + ")");
    }
  }
  return t.done("1000 random triples (den <= 1e4) exact; landmark rows +1/0/-1 with |r| < 1 when asymmetric");
}

// ------------------------------------------------------------------------ 2

Outcome normalizer_bounds() {
  Tally t;
  std::mt19937_64 rng(2002);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::int64_t n = 2; n <= 200; ++n) {
    const Rational want = n % 2 == 0 ? Rational(1, 4) : Rational(n * n - 1, 4 * n * n);
    const auto [dm, dw] = oracle::tie_free_bounds(n);
    if (dm != want || dw != -want) t.fail("brute force n=" + std::to_string(n));
    std::vector<double> x(n), y(n);
    for (auto& e : x) e = u(rng);
    for (auto& e : y) e = u(rng);
    const auto rep = mu_empirical(pairs(x, y));
    if (*rep.d_m_exact != want || *rep.d_w_exact != -want) t.fail("library n=" + std::to_string(n));
  }
  return t.done("n = 2..200: d(M) = -d(W) = 1/4 (even), (n^2-1)/(4n^2) (odd), brute force and library");
}

// ------------------------------------------------------------------------ 3

Outcome mixture_recovery() {
  Tally t;
  double worst = 0.0, spread = 0.0;
  for (double alpha : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    double lo = 2, hi = -2;
    for (double theta : {0.2, 0.5, 0.8}) {
      const double mu = mu_measure(ParetoGeometricMixture{alpha, theta}.subcopula(200)).mu;
      worst = std::max(worst, std::abs(mu - alpha));
      lo = std::min(lo, mu);
      hi = std::max(hi, mu);
      if (!(std::abs(mu - alpha) <= 1e-3)) t.fail("alpha=" + std::to_string(alpha) + " theta=" + std::to_string(theta));
    }
    spread = std::max(spread, hi - lo);
    if (!(hi - lo <= 1e-3)) t.fail("theta dependence at alpha=" + std::to_string(alpha));
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "15 (alpha, theta) cells: max |mu - alpha| = %.2e, max spread over theta = %.2e",
                worst, spread);
  return t.done(buf);
}

// ------------------------------------------------------------------- 4 and 5

const NumericOptions kNumeric{};

const std::vector<CurveRow>& curve() {
  static const std::vector<CurveRow> rows = clayton_curve(linspace(-1.0, 50.0, 40), kNumeric, 1024, 0);
  return rows;
}

Outcome clayton_shape() {
  Tally t;
  const double w = mu_copula_numeric(CopulaFamily::clayton(-1.0), kNumeric).mu;
  const double pi = mu_copula_numeric(CopulaFamily::independence(), kNumeric).mu;
  const double m = mu_copula_numeric(CopulaFamily::upper_bound(), kNumeric).mu;
  if (!(std::abs(w + 1) <= 1e-3)) t.fail("theta=-1 gives " + std::to_string(w));
  if (!(std::abs(pi) <= 1e-6)) t.fail("Pi gives " + std::to_string(pi));
  if (!(m >= 0.999)) t.fail("M gives " + std::to_string(m));

  const auto& rows = curve();
  if (rows.size() != 40) t.fail("curve has " + std::to_string(rows.size()) + " rows");
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& r = rows[k];
    if (k > 0 && r.mu < rows[k - 1].mu - 1e-6) t.fail("mu decreases at theta=" + std::to_string(r.theta));
    if (r.tau != r.theta / (r.theta + 2)) t.fail("tau mismatch at theta=" + std::to_string(r.theta));
    if (sign(r.mu) != sign(r.tau) || sign(r.tau) != sign(r.rho))
      t.fail("sign disagreement at theta=" + std::to_string(r.theta));
  }
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "mu(-1) = %.6f, mu(Pi) = %.1e, mu(M) = %.6f; 40-point curve monotone, tau exact, signs agree", w, pi,
                m);
  return t.done(buf);
}

Outcome lambda_identity() {
  Tally t;
  const auto& rows = curve();
  const double tol = 2 * kNumeric.refine_tol + 4.0 / static_cast<double>(kNumeric.resolution);
  std::vector<double> lam(rows.size());
  parallel_for(rows.size(), 0, [&](std::size_t k) {
    lam[k] = lambda_inf_numeric(CopulaFamily::clayton(rows[k].theta), kNumeric).value;
  });
  double worst = 0.0;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const double gap = std::abs(std::abs(rows[k].mu) - lam[k]);
    worst = std::max(worst, gap);
    if (!(gap <= tol)) t.fail("theta=" + std::to_string(rows[k].theta));
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "40 thetas: max ||mu| - Lambda| = %.2e (tolerance %.2e)", worst, tol);
  return t.done(buf);
}

// ------------------------------------------------------------------------ 6

Outcome empirical_properties() {
  Tally t;
  oracle::SampleGen gen(6006);
  for (int trial = 0; trial < 400; ++trial) {
    const bool tied = trial >= 200;
    const auto n = gen.size(3, 60);
    std::vector<double> x, y;
    if (tied) {
      // at least two distinct values per margin, so mu is not pinned by degeneracy
      do {
        x = gen.discrete(n, 1 + static_cast<int>(gen.size(1, 6)));
        y = gen.discrete(n, 1 + static_cast<int>(gen.size(1, 6)));
      } while (std::all_of(x.begin(), x.end(), [&](double v) { return v == x[0]; }) ||
               std::all_of(y.begin(), y.end(), [&](double v) { return v == y[0]; }));
    } else {
      x = gen.uniform(n);
      y = gen.uniform(n);
    }
    const std::string tag = std::string(tied ? "tied" : "tie-free") + " trial " + std::to_string(trial);
    const Rational mu = exact_mu(x, y);
    if (mu < Rational(-1) || mu > Rational(1)) t.fail(tag + ": out of range");
    if (exact_mu(y, x) != mu) t.fail(tag + ": not symmetric");

    std::vector<double> up(n), down(n), neg(n), fx(n), fy(n);
    for (std::size_t k = 0; k < n; ++k) {
      up[k] = std::exp(x[k]) + 3 * x[k];
      down[k] = -5 * x[k] * x[k] * x[k] - x[k];
      neg[k] = -y[k];
      fx[k] = std::atan(4 * x[k] - 1);
      fy[k] = std::cbrt(y[k]) * 10 + 2;
    }
    if (exact_mu(x, up) != Rational(1)) t.fail(tag + ": increasing function not +1");
    if (exact_mu(x, down) != Rational(-1)) t.fail(tag + ": decreasing function not -1");
    const Rational flipped = exact_mu(x, neg);
    if (!tied && flipped != -mu) t.fail(tag + ": negation not exact");
    if (tied && mu != Rational(0) && (flipped > Rational(0)) == (mu > Rational(0))) t.fail(tag + ": no sign flip");
    if (exact_mu(fx, fy) != mu) t.fail(tag + ": not invariant under increasing transforms");
  }
  return t.done("200 tie-free (n 3..60) + 200 tied samples: range, symmetry, +/-1, negation, transform invariance");
}

// ------------------------------------------------------------------------ 7

/// Mixed-type margin: continuous draws with a point mass, or rounded values.
std::vector<double> mixed_margin(oracle::SampleGen& gen, std::size_t n) {
  std::vector<double> v = gen.uniform(n);
  switch (gen.size(0, 3)) {
    case 0:
      for (auto& e : v) e = e < 0.3 ? 0.0 : e;  // atom at zero, continuous above
      break;
    case 1:
      for (auto& e : v) e = std::floor(e * 5);
      break;
    case 2:
      for (auto& e : v) e = e < 0.5 ? std::floor(e * 4) : e;
      break;
    default:
      break;
  }
  return v;
}

bool located(const ValidationReport& rep, std::size_t i, std::size_t j) {
  for (const auto& v : rep.violations) {
    if (v.axiom == Axiom::two_increasing) {
      if ((v.i == i || v.i + 1 == i) && (v.j == j || v.j + 1 == j)) return true;
    } else if (v.i == i && v.j == j) {
      return true;
    }
  }
  return false;
}

Outcome axiom_suite() {
  Tally t;
  oracle::SampleGen gen(7007);
  int corrupted = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto n = gen.size(2, 80);
    const auto s = empirical_subcopula(pairs(mixed_margin(gen, n), mixed_margin(gen, n)));
    const auto rep = validate(s, 0.0);
    if (!rep.ok()) {
      t.fail("sample " + std::to_string(trial) + " invalid");
      continue;
    }
    // one cell pushed just past whatever bound it must respect
    const std::size_t i = gen.size(0, s.rows() - 1);
    const std::size_t j = gen.size(0, s.cols() - 1);
    const std::int64_t den = s.denominator();
    std::vector<std::int64_t> nums(s.numerators().begin(), s.numerators().end());
    auto& cell = nums[i * s.cols() + j];
    const bool boundary = i == 0 || j == 0 || i + 1 == s.rows() || j + 1 == s.cols();
    if (boundary) {
      cell += (cell == 0 || gen.size(0, 1) == 0) ? 1 : -1;
    } else {
      const std::int64_t u = s.d1().numerators()[i], v = s.d2().numerators()[j];
      cell = gen.size(0, 1) == 0 ? std::min(u, v) + 1 : std::max<std::int64_t>(u + v - den, 0) - 1;
    }
    const auto bad = validate(Subcopula::exact(s.d1(), s.d2(), nums), 0.0);
    ++corrupted;
    if (bad.ok()) {
      t.fail("corruption at (" + std::to_string(i) + "," + std::to_string(j) + ") undetected");
    } else if (!located(bad, i, j)) {
      t.fail("corruption at (" + std::to_string(i) + "," + std::to_string(j) + ") mislocated");
    }
  }
  return t.done("500 mixed-type empirical subcopulas valid; " + std::to_string(corrupted) +
                " single-cell corruptions detected and located");
}

// ------------------------------------------------------------------------ 8

constexpr std::uint64_t kIndependenceSeed = 88008;

Outcome independence() {
  Tally t;
  oracle::SampleGen gen(kIndependenceSeed);
  const double mu_u = mu_empirical(pairs(gen.uniform(10000), gen.uniform(10000))).mu;
  const double mu_d = mu_empirical(pairs(gen.discrete(10000, 7), gen.discrete(10000, 4))).mu;
  if (!(std::abs(mu_u) < 0.1)) t.fail("uniform mu = " + std::to_string(mu_u));
  if (!(std::abs(mu_d) < 0.1)) t.fail("discrete mu = " + std::to_string(mu_d));
  char buf[160];
  std::snprintf(buf, sizeof buf, "seed %llu, n = 10000: uniform mu = %.4f, discrete mu = %.4f",
                static_cast<unsigned long long>(kIndependenceSeed), mu_u, mu_d);
  return t.done(buf);
}

// ------------------------------------------------------------------------ 9

Outcome oracle_equivalence() {
  Tally t;
  std::size_t checked = 0;
  auto compare = [&](const std::vector<double>& x, const std::vector<double>& y) {
    ++checked;
    const auto got = mu_empirical(pairs(x, y));
    const auto want = oracle::naive_mu(x, y);
    if (*got.mu_exact != want.mu || *got.d_s_exact != want.d_s || got.degenerate != want.degenerate)
      t.fail("n=" + std::to_string(x.size()) + ": " + str(*got.mu_exact) + " vs " + str(want.mu));
  };
  // every tie pattern for n <= 4 with values in {0..n-1}
  for (std::size_t n = 1; n <= 4; ++n) {
    std::size_t total = 1;
    for (std::size_t k = 0; k < n; ++k) total *= n;
    std::vector<double> x(n), y(n);
    for (std::size_t a = 0; a < total; ++a) {
      for (std::size_t b = 0; b < total; ++b) {
        for (std::size_t k = 0, ra = a, rb = b; k < n; ++k, ra /= n, rb /= n) {
          x[k] = static_cast<double>(ra % n);
          y[k] = static_cast<double>(rb % n);
        }
        compare(x, y);
      }
    }
  }
  oracle::SampleGen gen(9009);
  for (int trial = 0; trial < 5000; ++trial) {
    const auto n = gen.size(5, 8);
    const int lx = static_cast<int>(gen.size(1, 9)), ly = static_cast<int>(gen.size(1, 9));
    compare(lx == 9 ? gen.uniform(n) : gen.discrete(n, lx), ly == 9 ? gen.uniform(n) : gen.discrete(n, ly));
  }
  return t.done(std::to_string(checked) + " samples with n <= 8 (exhaustive for n <= 4) match the naive oracle exactly");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"Bernoulli exactness", bernoulli_exactness},
      {"Normalizer bounds", normalizer_bounds},
      {"Mixture recovery", mixture_recovery},
      {"Clayton endpoints and shape", clayton_shape},
      {"Lambda identity", lambda_identity},
      {"Empirical mu properties", empirical_properties},
      {"Subcopula axiom suite", axiom_suite},
      {"Independence sanity", independence},
      {"Oracle equivalence", oracle_equivalence},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[k].second();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += out.pass ? 0 : 1;
    std::printf("%s  %zu. %s (%.1fs): %s\n", out.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(), secs,
                out.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
