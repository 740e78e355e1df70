#include "subdep/parametric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace subdep {

CopulaFamily CopulaFamily::clayton(double theta) {
  if (!(theta >= -1.0) || !std::isfinite(theta)) {
    throw std::invalid_argument("Clayton parameter must be finite and >= -1");
  }
  return CopulaFamily(Kind::Clayton, theta);
}

CopulaFamily CopulaFamily::mix_m_pi(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("mixture weight must lie in [0, 1]");
  return CopulaFamily(Kind::MixMPi, alpha);
}

namespace {

// Clayton for theta > 0 in log space; u^-theta overflows for large theta.
double clayton_positive(double u, double v, double theta) {
  if (u <= 0.0 || v <= 0.0) return 0.0;
  const double a = -theta * std::log(u);
  const double b = -theta * std::log(v);
  const double hi = std::max(a, b);
  double log_s;
  if (hi < 700.0) {
    log_s = std::log1p(std::expm1(a) + std::expm1(b));
  } else {
    log_s = hi + std::log(std::exp(a - hi) + std::exp(b - hi) - std::exp(-hi));
  }
  return std::exp(-log_s / theta);
}

double clayton_negative(double u, double v, double theta) {
  const double t = -theta;
  const double base = std::pow(u, t) + std::pow(v, t) - 1.0;
  if (base <= 0.0) return 0.0;
  return t == 1.0 ? base : std::pow(base, 1.0 / t);
}

}  // namespace

double CopulaFamily::operator()(double u, double v) const {
  switch (kind_) {
    case Kind::W: return std::max(u + v - 1.0, 0.0);
    case Kind::Pi: return u * v;
    case Kind::M: return std::min(u, v);
    case Kind::MixMPi: return param_ * std::min(u, v) + (1.0 - param_) * u * v;
    case Kind::Clayton:
      if (param_ == 0.0) return u * v;
      return param_ > 0.0 ? clayton_positive(u, v, param_) : clayton_negative(u, v, param_);
  }
  return 0.0;
}

std::string CopulaFamily::name() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::W: return "W";
    case Kind::Pi: return "Pi";
    case Kind::M: return "M";
    case Kind::Clayton: os << "Clayton(" << param_ << ")"; break;
    case Kind::MixMPi: os << "MixMPi(" << param_ << ")"; break;
  }
  return os.str();
}

Subcopula discretize(const CopulaFamily& c, const GridDomain& d1, const GridDomain& d2) {
  auto g1 = d1.as_floating();
  auto g2 = d2.as_floating();
  std::vector<double> vals(g1.size() * g2.size());
  for (std::size_t i = 0; i < g1.size(); ++i) {
    for (std::size_t j = 0; j < g2.size(); ++j) {
      const double x = c(g1.level(i), g2.level(j));
      if (!std::isfinite(x) || x < -kDefaultAxiomTolerance || x > 1.0 + kDefaultAxiomTolerance) {
        std::ostringstream os;
        os << c.name() << " evaluated to " << x << " at (" << g1.level(i) << ", " << g2.level(j) << ")";
        throw StructuralError(os.str());
      }
      vals[i * g2.size() + j] = x;
    }
  }
  return Subcopula::floating(std::move(g1), std::move(g2), std::move(vals));
}

// ------------------------------------------- Pareto x Geometric mixture

namespace {

std::vector<double> geometric_levels(double theta, int k_max) {
  std::vector<double> lv{0.0};
  for (int k = 1; k <= k_max; ++k) {
    const double q = -std::expm1(static_cast<double>(k) * std::log1p(-theta));
    if (!(q < 1.0) || !(q > lv.back())) break;
    lv.push_back(q);
  }
  lv.push_back(1.0);
  return lv;
}

}  // namespace

GridDomain ParetoGeometricMixture::geometric_grid() const {
  if (!(theta > 0.0 && theta < 1.0)) throw std::invalid_argument("geometric parameter must lie in (0, 1)");
  if (y_truncation < 1) throw std::invalid_argument("truncation K must be >= 1");
  return GridDomain::floating(geometric_levels(theta, y_truncation));
}

double ParetoGeometricMixture::truncation_error() const {
  const auto lv = geometric_levels(theta, y_truncation);
  const auto kept = static_cast<double>(lv.size() - 2);
  return std::pow(1.0 - theta, kept);
}

Subcopula ParetoGeometricMixture::subcopula(std::size_t u_intervals) const {
  return discretize(CopulaFamily::mix_m_pi(alpha), GridDomain::uniform(u_intervals), geometric_grid());
}

}  // namespace subdep
