#include "subdep/parametric.hpp"

#include "subdep/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace subdep {

namespace {

// Dense scan of f over {i/G}^2, then compass search from the best grid point:
// try the 8 neighbours at step h, move on strict improvement, otherwise halve
// h; stop once h < tol. Only improvements are accepted, so the result is never
// below the grid value.
template <class F>
SupResult maximize(F f, const NumericOptions& opt) {
  const std::size_t g = std::max<std::size_t>(opt.resolution, 1);
  const double step = 1.0 / static_cast<double>(g);
  SupResult best;
  best.value = f(0.0, 0.0);
  for (std::size_t i = 0; i <= g; ++i) {
    const double u = i == g ? 1.0 : static_cast<double>(i) * step;
    for (std::size_t j = 0; j <= g; ++j) {
      const double v = j == g ? 1.0 : static_cast<double>(j) * step;
      const double x = f(u, v);
      if (x > best.value) {
        best.value = x;
        best.u = u;
        best.v = v;
      }
    }
  }
  best.grid_value = best.value;

  static constexpr std::array<std::pair<int, int>, 8> kDirs{
      {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}, {1, -1}, {-1, 1}}};
  double h = step;
  std::size_t steps = 0;
  while (h >= opt.refine_tol) {
    if (++steps > opt.max_refine_steps) {
      best.converged = false;
      break;
    }
    double cand = best.value;
    double cu = best.u;
    double cv = best.v;
    for (const auto& [du, dv] : kDirs) {
      const double u = std::clamp(best.u + du * h, 0.0, 1.0);
      const double v = std::clamp(best.v + dv * h, 0.0, 1.0);
      const double x = f(u, v);
      if (x > cand) {
        cand = x;
        cu = u;
        cv = v;
      }
    }
    if (cand > best.value) {
      best.value = cand;
      best.u = cu;
      best.v = cv;
    } else {
      h *= 0.5;
    }
  }
  return best;
}

std::size_t even_resolution(std::size_t g) {
  g = std::max<std::size_t>(g, 2);
  return g % 2 == 0 ? g : g + 1;
}

template <class F>
double simpson_2d(F f, std::size_t g) {
  const double h = 1.0 / static_cast<double>(g);
  auto weight = [g](std::size_t k) -> double {
    if (k == 0 || k == g) return 1.0;
    return k % 2 == 1 ? 4.0 : 2.0;
  };
  double total = 0.0;
  for (std::size_t i = 0; i <= g; ++i) {
    const double u = i == g ? 1.0 : static_cast<double>(i) * h;
    double row = 0.0;
    for (std::size_t j = 0; j <= g; ++j) {
      const double v = j == g ? 1.0 : static_cast<double>(j) * h;
      row += weight(j) * f(u, v);
    }
    total += weight(i) * row;
  }
  return total * (h / 3.0) * (h / 3.0);
}

}  // namespace

CopulaMuResult mu_copula_numeric(const CopulaFamily& c, const NumericOptions& opt) {
  CopulaMuResult out;
  out.resolution = opt.resolution;
  out.sup_pos = maximize([&](double u, double v) { return c(u, v) - u * v; }, opt);
  out.sup_neg = maximize([&](double u, double v) { return u * v - c(u, v); }, opt);
  out.mu = 4.0 * (out.sup_pos.value - out.sup_neg.value);
  out.precision_flag = !out.sup_pos.converged || !out.sup_neg.converged;
  return out;
}

SupResult lambda_inf_numeric(const CopulaFamily& c, const NumericOptions& opt) {
  auto r = maximize([&](double u, double v) { return std::abs(c(u, v) - u * v); }, opt);
  r.value *= 4.0;
  r.grid_value *= 4.0;
  return r;
}

QuadratureResult spearman_numeric(const CopulaFamily& c, std::size_t resolution) {
  const auto g = even_resolution(resolution);
  return {12.0 * simpson_2d([&](double u, double v) { return c(u, v) - u * v; }, g), g};
}

QuadratureResult schweizer_wolff_numeric(const CopulaFamily& c, std::size_t resolution) {
  const auto g = even_resolution(resolution);
  return {12.0 * simpson_2d([&](double u, double v) { return std::abs(c(u, v) - u * v); }, g), g};
}

KendallResult kendall_clayton(double theta) {
  if (!(theta >= -1.0) || !std::isfinite(theta)) throw std::invalid_argument("Clayton parameter must be >= -1");
  if (theta == 0.0) return {0.0, true};
  return {theta / (theta + 2.0), false};
}

std::vector<CurveRow> clayton_curve(const std::vector<double>& thetas, const NumericOptions& opt,
                                    std::size_t quad_resolution, unsigned threads) {
  std::vector<CurveRow> rows(thetas.size());
  parallel_for(thetas.size(), threads, [&](std::size_t k) {
    const auto c = CopulaFamily::clayton(thetas[k]);
    const auto mu = mu_copula_numeric(c, opt);
    const auto tau = kendall_clayton(thetas[k]);
    rows[k] = CurveRow{thetas[k], mu.mu, tau.tau, spearman_numeric(c, quad_resolution).value, mu.precision_flag,
                       tau.theta_zero};
  });
  return rows;
}

std::vector<double> linspace(double lo, double hi, std::size_t steps) {
  if (steps == 0) return {};
  if (steps == 1) return {lo};
  std::vector<double> out(steps);
  for (std::size_t k = 0; k < steps; ++k) {
    out[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(steps - 1);
  }
  out.back() = hi;
  return out;
}

}  // namespace subdep
