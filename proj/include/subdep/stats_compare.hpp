#pragma once

// Moment statistics used alongside mu for comparison with Pearson's r.

#include "subdep/empirical.hpp"

#include <optional>

namespace subdep {

/// Population-convention (denominator n) moments of a sample.
struct SummaryStats {
  double mean_x = 0.0;
  double mean_y = 0.0;
  double var_x = 0.0;
  double var_y = 0.0;
  double cov = 0.0;
};

/// Two passes: means first, then centered sums.
SummaryStats summarize(const BivariateSample& sample);

/// Product-moment correlation; nullopt when n < 2 or a margin is constant.
std::optional<double> pearson_sample(const BivariateSample& sample);

}  // namespace subdep
