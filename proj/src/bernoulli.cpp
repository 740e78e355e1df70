#include "subdep/parametric.hpp"

#include <boost/integer/common_factor_rt.hpp>

#include <algorithm>
#include <cmath>

namespace subdep {

Rational BernoulliPairModel::alpha_lower() const {
  return std::max(theta1 + theta2 - Rational(1), Rational(0));
}

Rational BernoulliPairModel::alpha_upper() const { return std::min(theta1, theta2); }

void BernoulliPairModel::check() const {
  if (theta1 <= 0 || theta1 >= 1) throw std::invalid_argument("theta1 must lie in (0, 1)");
  if (theta2 <= 0 || theta2 >= 1) throw std::invalid_argument("theta2 must lie in (0, 1)");
  if (alpha < alpha_lower() || alpha > alpha_upper()) {
    throw std::invalid_argument("alpha outside the Frechet-Hoeffding range [max(theta1+theta2-1,0), min(theta1,theta2)]");
  }
}

Subcopula bernoulli_subcopula(const BernoulliPairModel& m) {
  m.check();
  using boost::integer::lcm;
  const std::int64_t den = lcm(lcm(m.theta1.denominator(), m.theta2.denominator()), m.alpha.denominator());
  if (den > kMaxExactDenominator) throw std::overflow_error("Bernoulli parameters need too large a denominator");
  auto scaled = [den](const Rational& r) { return r.numerator() * (den / r.denominator()); };
  const std::int64_t a = scaled(m.theta1);
  const std::int64_t b = scaled(m.theta2);
  const std::int64_t c = scaled(m.alpha);
  auto d1 = GridDomain::exact({0, den - a, den}, den);
  auto d2 = GridDomain::exact({0, den - b, den}, den);
  // clang-format off
  std::vector<std::int64_t> vals{
      0, 0,               0,
      0, den + c - a - b, den - a,
      0, den - b,         den};
  // clang-format on
  return Subcopula::exact(std::move(d1), std::move(d2), std::move(vals));
}

Rational bernoulli_mu_closed(const BernoulliPairModel& m) {
  m.check();
  const Rational& t1 = m.theta1;
  const Rational& t2 = m.theta2;
  const Rational one(1);
  const Rational cov = m.alpha - t1 * t2;
  if (cov >= 0) {
    return t2 <= t1 ? cov / (t2 * (one - t1)) : cov / (t1 * (one - t2));
  }
  return t2 <= one - t1 ? cov / (t1 * t2) : cov / ((one - t1) * (one - t2));
}

double bernoulli_pearson(const BernoulliPairModel& m) {
  m.check();
  const auto t1 = boost::rational_cast<double>(m.theta1);
  const auto t2 = boost::rational_cast<double>(m.theta2);
  const auto cov = boost::rational_cast<double>(m.alpha - m.theta1 * m.theta2);
  return cov / std::sqrt(t1 * (1.0 - t1) * t2 * (1.0 - t2));
}

}  // namespace subdep
