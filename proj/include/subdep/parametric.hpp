#pragma once

/**
 * @file parametric.hpp
 * @brief Parametric models: the Bernoulli pair, the M/Pi mixture on a
 *        Pareto x Geometric domain, and copula families with numeric
 *        functionals (mu, Lambda, Spearman's rho, Schweizer-Wolff sigma).
 */

#include "subdep/subcopula.hpp"

#include <string>
#include <vector>

namespace subdep {

// ------------------------------------------------------------ Bernoulli pair

/// X ~ Bernoulli(theta1), Y ~ Bernoulli(theta2), alpha = P(X = 1, Y = 1).
/// Parameters are exact rationals so the closed form can be compared with the
/// generic grid computation without rounding.
struct BernoulliPairModel {
  Rational theta1;
  Rational theta2;
  Rational alpha;

  /// Throws std::invalid_argument unless 0 < theta_i < 1 and
  /// max(theta1 + theta2 - 1, 0) <= alpha <= min(theta1, theta2).
  void check() const;
  Rational alpha_lower() const;
  Rational alpha_upper() const;
  Rational independence_alpha() const { return theta1 * theta2; }
};

/// Domain {0, 1 - theta1, 1} x {0, 1 - theta2, 1}, interior 1 + alpha - theta1 - theta2.
Subcopula bernoulli_subcopula(const BernoulliPairModel& m);

/// The four-branch closed form of mu.
Rational bernoulli_mu_closed(const BernoulliPairModel& m);

/// (alpha - theta1 theta2) / sqrt(theta1 (1 - theta1) theta2 (1 - theta2)).
double bernoulli_pearson(const BernoulliPairModel& m);

// ---------------------------------------------------------- copula families

class CopulaFamily {
 public:
  enum class Kind { W, Pi, M, Clayton, MixMPi };

  static CopulaFamily lower_bound() { return CopulaFamily(Kind::W, 0.0); }
  static CopulaFamily independence() { return CopulaFamily(Kind::Pi, 0.0); }
  static CopulaFamily upper_bound() { return CopulaFamily(Kind::M, 0.0); }
  /// theta in [-1, inf); theta = 0 evaluates as Pi and sets theta_zero().
  static CopulaFamily clayton(double theta);
  /// alpha M + (1 - alpha) Pi, alpha in [0, 1].
  static CopulaFamily mix_m_pi(double alpha);

  Kind kind() const noexcept { return kind_; }
  double parameter() const noexcept { return param_; }
  /// Clayton requested at theta = 0, replaced by its continuous limit Pi.
  bool theta_zero() const noexcept { return kind_ == Kind::Clayton && param_ == 0.0; }

  double operator()(double u, double v) const;
  std::string name() const;

 private:
  CopulaFamily(Kind k, double p) : kind_(k), param_(p) {}

  Kind kind_;
  double param_;
};

/// Evaluates `c` on every grid point. Values outside [0, 1] (beyond the axiom
/// tolerance) or non-finite raise StructuralError.
Subcopula discretize(const CopulaFamily& c, const GridDomain& d1, const GridDomain& d2);

// ---------------------------------------------------- mixture on Pareto x Geo

/// X ~ Pareto(1, 1) (continuous, Ran F_X = I) and Y ~ Geometric(theta) joined
/// by S_alpha = alpha M + (1 - alpha) Pi.
struct ParetoGeometricMixture {
  double alpha = 0.0;
  double theta = 0.5;
  int y_truncation = 60;

  /// {1 - (1 - theta)^k : k = 0..K} u {1}; levels that round to 1 in double
  /// precision end the sequence early.
  GridDomain geometric_grid() const;
  /// (1 - theta)^k for the last k kept in the grid: the mass not resolved.
  double truncation_error() const;
  /// S_alpha on a uniform u-grid with `u_intervals` cells times the geometric grid.
  Subcopula subcopula(std::size_t u_intervals = 200) const;
};

// -------------------------------------------------------- numeric functionals

struct NumericOptions {
  std::size_t resolution = 512;  ///< G: grid points per axis are G + 1
  double refine_tol = 1e-8;
  std::size_t max_refine_steps = 100000;
};

/// Location and value of a maximum found by grid scan + compass refinement.
struct SupResult {
  double value = 0.0;
  double grid_value = 0.0;
  double u = 0.0;
  double v = 0.0;
  bool converged = true;
};

struct CopulaMuResult {
  double mu = 0.0;
  SupResult sup_pos;  ///< max(C - Pi)
  SupResult sup_neg;  ///< max(Pi - C)
  std::size_t resolution = 0;
  bool precision_flag = false;  ///< refinement hit the step cap
};

/// 4 (max(C - Pi) - max(Pi - C)) over the unit square.
CopulaMuResult mu_copula_numeric(const CopulaFamily& c, const NumericOptions& opt = {});

/// 4 sup |C - Pi|, searched directly on |C - Pi|.
SupResult lambda_inf_numeric(const CopulaFamily& c, const NumericOptions& opt = {});

struct QuadratureResult {
  double value = 0.0;
  std::size_t resolution = 0;  ///< Simpson intervals per axis (even)
};

/// 12 * integral of (C - uv) by composite Simpson; odd G is rounded up.
QuadratureResult spearman_numeric(const CopulaFamily& c, std::size_t resolution = 1024);
/// 12 * integral of |C - uv|.
QuadratureResult schweizer_wolff_numeric(const CopulaFamily& c, std::size_t resolution = 1024);

struct KendallResult {
  double tau = 0.0;
  bool theta_zero = false;
};

/// theta / (theta + 2); theta = 0 gives 0 with the flag set.
KendallResult kendall_clayton(double theta);

struct CurveRow {
  double theta = 0.0;
  double mu = 0.0;
  double tau = 0.0;
  double rho = 0.0;
  bool precision_flag = false;
  bool theta_zero = false;
};

/// (theta, mu, tau, rho) for each theta of the Clayton family.
std::vector<CurveRow> clayton_curve(const std::vector<double>& thetas, const NumericOptions& opt = {},
                                    std::size_t quad_resolution = 1024, unsigned threads = 1);

/// `steps` evenly spaced values from lo to hi inclusive.
std::vector<double> linspace(double lo, double hi, std::size_t steps);

}  // namespace subdep
