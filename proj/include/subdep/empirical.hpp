#pragma once

// Empirical subcopula of a bivariate sample with arbitrary ties.
//
// The grid of each margin is the set of cumulative proportions of the
// distinct observed values, so every level is (count)/n and the whole
// subcopula is exact over the denominator n.

#include "subdep/subcopula.hpp"

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace subdep {

class EmptySampleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Paired observations after missing-value removal.
///
/// NaN in either coordinate drops the pair; infinities are kept as ordinary
/// ordered values. Negative zero is stored as +0 so that the two compare as a
/// tie. Two observations tie iff they are equal as doubles.
class BivariateSample {
 public:
  static BivariateSample from_pairs(std::span<const double> x, std::span<const double> y);

  std::span<const double> x() const noexcept { return x_; }
  std::span<const double> y() const noexcept { return y_; }
  std::size_t n() const noexcept { return x_.size(); }
  std::size_t dropped() const noexcept { return dropped_; }

 private:
  std::vector<double> x_;
  std::vector<double> y_;
  std::size_t dropped_ = 0;
};

/// Distinct values, their counts and ranks for both margins.
struct EmpiricalGrid {
  std::int64_t n = 0;
  std::vector<double> distinct_x;  ///< r_1 < ... < r_m1
  std::vector<double> distinct_y;  ///< s_1 < ... < s_m2
  std::vector<std::int64_t> count_x;
  std::vector<std::int64_t> count_y;
  std::vector<std::uint32_t> rank_x;  ///< 0-based index into distinct_x, per pair
  std::vector<std::uint32_t> rank_y;

  std::size_t m1() const noexcept { return distinct_x.size(); }
  std::size_t m2() const noexcept { return distinct_y.size(); }

  Rational p1(std::size_t i) const { return Rational(count_x.at(i), n); }
  Rational p2(std::size_t j) const { return Rational(count_y.at(j), n); }

  /// Cumulative proportions {0, q_1, ..., 1} as exact grids over n.
  GridDomain q1() const;
  GridDomain q2() const;
};

EmpiricalGrid build_grid(const BivariateSample& sample);

/// S_n(q_1i, q_2j) = #{k : x_k <= r_i, y_k <= s_j} / n, materialized.
Subcopula empirical_subcopula(const BivariateSample& sample);

/// mu(S_n) without materializing S_n: the joint CDF is accumulated one
/// x-level at a time, so memory is O(n + m2) and time O(n log n + m1 m2).
/// The result is identical to mu_measure(empirical_subcopula(sample)).
DependenceReport mu_empirical(const BivariateSample& sample);

/// Tie-free shortcut: 4 d(S_n) for even n and 4n^2/(n^2 - 1) d(S_n) for odd
/// n, with the sign convention of the normalized measure.
Rational tie_free_mu(const Rational& d_s, std::int64_t n);

struct NamedColumn {
  std::string name;
  std::vector<double> values;  ///< NaN marks a missing entry
};

struct MatrixEntry {
  bool available = false;  ///< false when the pair has no complete rows
  bool degenerate = false;
  double mu = 0.0;
  std::optional<Rational> mu_exact;
  std::size_t n = 0;
};

struct DependenceMatrix {
  std::vector<std::string> names;
  std::vector<MatrixEntry> entries;  ///< row-major, size() x size()

  std::size_t size() const noexcept { return names.size(); }
  const MatrixEntry& at(std::size_t i, std::size_t j) const { return entries.at(i * size() + j); }
};

/// Pairwise mu on pairwise-complete rows; diagonal is +1.
/// `threads` = 0 picks the hardware concurrency.
DependenceMatrix dependence_matrix(std::span<const NamedColumn> columns, unsigned threads = 1);

}  // namespace subdep
