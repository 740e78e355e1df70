#pragma once

/**
 * @file subcopula.hpp
 * @brief Bivariate subcopulas on finite grids and the monotone dependence measure.
 *
 * A subcopula lives on a product of two finite grids of probability levels,
 * each containing 0 and 1. Two numeric modes are supported:
 *
 *  - exact: every level and every value is an integer numerator over one
 *    common denominator (empirical subcopulas use the sample size n), so
 *    axiom checks and the sup-searches are carried out in integer arithmetic;
 *  - floating: plain doubles, validated with an absolute tolerance.
 *
 * The dependence functional is d(S) = sup(S - Pi_S) - sup(Pi_S - S), and the
 * normalized measure mu divides d(S) by d(M_S) (when d(S) >= 0) or by
 * -d(W_S) (when d(S) < 0).
 */

#include <boost/rational.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace subdep {

using Rational = boost::rational<std::int64_t>;

/// Largest common denominator accepted in exact mode (den * den fits in int64).
inline constexpr std::int64_t kMaxExactDenominator = 3'037'000'499;

/// Default absolute tolerance for axiom checks in floating mode.
inline constexpr double kDefaultAxiomTolerance = 1e-12;

/// Malformed input: bad grid, dimension mismatch, mixed numeric modes.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A well-formed matrix that violates one of the subcopula axioms.
class AxiomError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class NumericMode { exact, floating };

/// Sorted set of probability levels {0 = t_0 < t_1 < ... < t_k = 1}.
class GridDomain {
 public:
  static GridDomain exact(std::vector<std::int64_t> numerators, std::int64_t denominator);
  static GridDomain floating(std::vector<double> levels);
  /// Floating grid {0, 1/k, ..., 1}.
  static GridDomain uniform(std::size_t intervals);

  NumericMode mode() const noexcept { return mode_; }
  std::size_t size() const noexcept { return levels_.size(); }
  double level(std::size_t i) const { return levels_.at(i); }
  std::span<const double> levels() const noexcept { return levels_; }

  // Exact mode only.
  std::span<const std::int64_t> numerators() const;
  std::int64_t denominator() const;
  Rational exact_level(std::size_t i) const;

  /// True when the grid is {0, 1}.
  bool trivial() const noexcept { return levels_.size() == 2; }
  bool contains_half() const;

  /// Same levels, numerators multiplied by `factor` (exact mode only).
  GridDomain rescaled(std::int64_t factor) const;
  GridDomain as_floating() const;

  friend bool operator==(const GridDomain&, const GridDomain&) = default;

 private:
  GridDomain() = default;

  NumericMode mode_ = NumericMode::floating;
  std::vector<std::int64_t> numerators_;
  std::int64_t denominator_ = 0;
  std::vector<double> levels_;
};

/// Brings two exact domains onto their least common denominator.
void unify_denominators(GridDomain& d1, GridDomain& d2);

/// Values of a subcopula on d1 x d2, stored row-major (d1 index first).
class Subcopula {
 public:
  /// Numerators share the denominator of both domains.
  static Subcopula exact(GridDomain d1, GridDomain d2, std::vector<std::int64_t> numerators);
  static Subcopula floating(GridDomain d1, GridDomain d2, std::vector<double> values);

  NumericMode mode() const noexcept { return d1_.mode(); }
  const GridDomain& d1() const noexcept { return d1_; }
  const GridDomain& d2() const noexcept { return d2_; }
  std::size_t rows() const noexcept { return d1_.size(); }
  std::size_t cols() const noexcept { return d2_.size(); }

  double value(std::size_t i, std::size_t j) const;

  // Exact mode only.
  std::int64_t numerator(std::size_t i, std::size_t j) const;
  std::int64_t denominator() const { return d1_.denominator(); }
  Rational exact_value(std::size_t i, std::size_t j) const;
  std::span<const std::int64_t> numerators() const;

  // Floating mode only.
  std::span<const double> values() const;

  friend bool operator==(const Subcopula&, const Subcopula&) = default;

 private:
  Subcopula(GridDomain d1, GridDomain d2) : d1_(std::move(d1)), d2_(std::move(d2)) {}

  GridDomain d1_;
  GridDomain d2_;
  std::vector<std::int64_t> numerators_;
  std::vector<double> values_;
};

enum class Axiom { grounded, margins, two_increasing, frechet_hoeffding };

std::string to_string(Axiom a);

/// One failed axiom check.
///
/// For `two_increasing`, (i, j) is the lower-left corner of the grid cell
/// [t_i, t_{i+1}] x [s_j, s_{j+1}] whose volume is negative. For the other
/// axioms (i, j) is the offending grid point.
struct Violation {
  Axiom axiom;
  std::size_t i = 0;
  std::size_t j = 0;
  double u = 0.0;
  double v = 0.0;
  double deficit = 0.0;  ///< how far the check missed, always > 0
  std::optional<Rational> exact_deficit;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

/// Checks grounding, uniform margins, 2-increasingness on adjacent cells,
/// and the Frechet-Hoeffding bounds. Exact mode ignores `tolerance`.
ValidationReport validate(const Subcopula& s, double tolerance = kDefaultAxiomTolerance);

enum class BoundKind { M, W, Pi };

/// Restriction of M, W or Pi to d1 x d2.
///
/// Exact domains stay exact; the Pi restriction squares the common
/// denominator and throws std::overflow_error if that leaves exact range.
Subcopula restrict(BoundKind kind, GridDomain d1, GridDomain d2);

Subcopula transpose(const Subcopula& s);

struct GridPoint {
  std::size_t i = 0;
  std::size_t j = 0;
  double u = 0.0;
  double v = 0.0;
};

struct SampleInfo {
  std::size_t n = 0;
  std::size_t dropped = 0;
};

struct DependenceReport {
  double d_s = 0.0;
  double d_m = 0.0;
  double d_w = 0.0;
  double mu = 0.0;
  double sup_pos = 0.0;  ///< sup(S - Pi_S)
  double sup_neg = 0.0;  ///< sup(Pi_S - S)
  // Populated in exact mode.
  std::optional<Rational> d_s_exact;
  std::optional<Rational> d_m_exact;
  std::optional<Rational> d_w_exact;
  std::optional<Rational> mu_exact;
  GridPoint argmax_pos;
  GridPoint argmax_neg;
  std::size_t rows = 0;
  std::size_t cols = 0;
  /// One of the domains is {0, 1}; mu is reported as 0.
  bool degenerate = false;
  std::optional<SampleInfo> sample;
};

/// d(S) with the attaining grid points (first in row-major order on ties).
/// Only d_s, sup_pos, sup_neg, argmax_* and the domain sizes are filled.
/// Throws AxiomError when `s` is not a valid subcopula.
DependenceReport d_measure(const Subcopula& s, double tolerance = kDefaultAxiomTolerance);

/// Full report including d(M_S), d(W_S) and mu.
DependenceReport mu_measure(const Subcopula& s, double tolerance = kDefaultAxiomTolerance);

}  // namespace subdep
