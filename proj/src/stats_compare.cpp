#include "subdep/stats_compare.hpp"

#include <algorithm>
#include <cmath>

namespace subdep {

SummaryStats summarize(const BivariateSample& sample) {
  SummaryStats s;
  const auto x = sample.x();
  const auto y = sample.y();
  const auto n = static_cast<double>(sample.n());
  for (std::size_t k = 0; k < x.size(); ++k) {
    s.mean_x += x[k];
    s.mean_y += y[k];
  }
  s.mean_x /= n;
  s.mean_y /= n;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double dx = x[k] - s.mean_x;
    const double dy = y[k] - s.mean_y;
    s.var_x += dx * dx;
    s.var_y += dy * dy;
    s.cov += dx * dy;
  }
  s.var_x /= n;
  s.var_y /= n;
  s.cov /= n;
  return s;
}

std::optional<double> pearson_sample(const BivariateSample& sample) {
  if (sample.n() < 2) return std::nullopt;
  auto constant = [](std::span<const double> v) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *lo == *hi;
  };
  if (constant(sample.x()) || constant(sample.y())) return std::nullopt;
  const auto s = summarize(sample);
  if (!(s.var_x > 0.0) || !(s.var_y > 0.0) || !std::isfinite(s.var_x) || !std::isfinite(s.var_y)) {
    return std::nullopt;
  }
  return std::clamp(s.cov / std::sqrt(s.var_x * s.var_y), -1.0, 1.0);
}

}  // namespace subdep
