#include "subdep/empirical.hpp"

#include "measure_detail.hpp"
#include "subdep/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace subdep {

BivariateSample BivariateSample::from_pairs(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw StructuralError("x and y must have the same length");
  BivariateSample s;
  s.x_.reserve(x.size());
  s.y_.reserve(y.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (std::isnan(x[k]) || std::isnan(y[k])) {
      ++s.dropped_;
      continue;
    }
    s.x_.push_back(x[k] == 0.0 ? 0.0 : x[k]);
    s.y_.push_back(y[k] == 0.0 ? 0.0 : y[k]);
  }
  if (s.x_.empty()) throw EmptySampleError("sample has no complete pairs");
  if (s.x_.size() > static_cast<std::size_t>(std::numeric_limits<std::uint32_t>::max()) ||
      static_cast<std::int64_t>(s.x_.size()) > kMaxExactDenominator) {
    throw std::overflow_error("sample too large for exact arithmetic");
  }
  return s;
}

namespace {

void rank_margin(std::span<const double> values, std::vector<double>& distinct, std::vector<std::int64_t>& counts,
                 std::vector<std::uint32_t>& ranks) {
  distinct.assign(values.begin(), values.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  counts.assign(distinct.size(), 0);
  ranks.resize(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    const auto r = static_cast<std::uint32_t>(std::lower_bound(distinct.begin(), distinct.end(), values[k]) -
                                              distinct.begin());
    ranks[k] = r;
    ++counts[r];
  }
}

GridDomain cumulative_grid(const std::vector<std::int64_t>& counts, std::int64_t n) {
  std::vector<std::int64_t> q(counts.size() + 1, 0);
  std::partial_sum(counts.begin(), counts.end(), q.begin() + 1);
  return GridDomain::exact(std::move(q), n);
}

}  // namespace

GridDomain EmpiricalGrid::q1() const { return cumulative_grid(count_x, n); }
GridDomain EmpiricalGrid::q2() const { return cumulative_grid(count_y, n); }

EmpiricalGrid build_grid(const BivariateSample& sample) {
  if (sample.n() == 0) throw EmptySampleError("sample has no complete pairs");
  EmpiricalGrid g;
  g.n = static_cast<std::int64_t>(sample.n());
  rank_margin(sample.x(), g.distinct_x, g.count_x, g.rank_x);
  rank_margin(sample.y(), g.distinct_y, g.count_y, g.rank_y);
  return g;
}

Subcopula empirical_subcopula(const BivariateSample& sample) {
  const auto g = build_grid(sample);
  const std::size_t rows = g.m1() + 1;
  const std::size_t cols = g.m2() + 1;
  // contingency counts at (rank_x + 1, rank_y + 1), then 2-D prefix sums in place
  std::vector<std::int64_t> cells(rows * cols, 0);
  for (std::size_t k = 0; k < g.rank_x.size(); ++k) ++cells[(g.rank_x[k] + 1) * cols + g.rank_y[k] + 1];
  for (std::size_t i = 1; i < rows; ++i) {
    std::int64_t running = 0;
    for (std::size_t j = 1; j < cols; ++j) {
      running += cells[i * cols + j];
      cells[i * cols + j] = cells[(i - 1) * cols + j] + running;
    }
  }
  return Subcopula::exact(g.q1(), g.q2(), std::move(cells));
}

DependenceReport mu_empirical(const BivariateSample& sample) {
  const auto g = build_grid(sample);
  const auto q1 = g.q1();
  const auto q2 = g.q2();
  const auto u = q1.numerators();
  const auto v = q2.numerators();
  const std::int64_t n = g.n;
  const std::size_t m1 = g.m1();
  const std::size_t m2 = g.m2();

  // bucket pair indices by x-rank (counting sort)
  std::vector<std::size_t> start(m1 + 1, 0);
  for (auto r : g.rank_x) ++start[r + 1];
  std::partial_sum(start.begin(), start.end(), start.begin());
  std::vector<std::uint32_t> ys(g.rank_x.size());
  {
    auto fill = start;
    for (std::size_t k = 0; k < g.rank_x.size(); ++k) ys[fill[g.rank_x[k]]++] = g.rank_y[k];
  }

  detail::DiffScan<std::int64_t> scan;
  // row 0 and column 0 are identically zero; the scan starts at 0 with (0, 0)
  std::vector<std::int64_t> cdf(m2 + 1, 0);  // S_n numerators of the current row
  std::vector<std::int64_t> row(m2 + 1, 0);  // cell counts of the current row
  for (std::size_t i = 1; i <= m1; ++i) {
    for (std::size_t k = start[i - 1]; k < start[i]; ++k) ++row[ys[k] + 1];
    std::int64_t running = 0;
    const std::int64_t ui = u[i];
    for (std::size_t j = 1; j <= m2; ++j) {
      running += row[j];
      cdf[j] += running;
      scan.offer(detail::scaled_diff(cdf[j], ui, v[j], n), i, j);
    }
    for (std::size_t k = start[i - 1]; k < start[i]; ++k) row[ys[k] + 1] = 0;
  }

  auto rep = detail::finish_exact(q1, q2, scan, true);
  rep.sample = SampleInfo{sample.n(), sample.dropped()};
  return rep;
}

Rational tie_free_mu(const Rational& d_s, std::int64_t n) {
  if (n < 2) return Rational(0);
  if (n % 2 == 0) return d_s * Rational(4);
  return d_s * Rational(4 * n * n, n * n - 1);
}

DependenceMatrix dependence_matrix(std::span<const NamedColumn> columns, unsigned threads) {
  if (columns.size() < 2) throw StructuralError("dependence matrix needs at least two columns");
  const std::size_t k = columns.size();
  const std::size_t len = columns.front().values.size();
  for (const auto& c : columns) {
    if (c.values.size() != len) throw StructuralError("column '" + c.name + "' has a different length");
  }

  DependenceMatrix out;
  out.entries.resize(k * k);
  for (const auto& c : columns) out.names.push_back(c.name);

  for (std::size_t i = 0; i < k; ++i) {
    auto& e = out.entries[i * k + i];
    e.n = static_cast<std::size_t>(
        std::count_if(columns[i].values.begin(), columns[i].values.end(), [](double x) { return !std::isnan(x); }));
    e.available = true;
    e.mu = 1.0;
    e.mu_exact = Rational(1);
  }

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) pairs.emplace_back(i, j);

  parallel_for(pairs.size(), threads, [&](std::size_t p) {
    const auto [i, j] = pairs[p];
    MatrixEntry e;
    try {
      const auto sample = BivariateSample::from_pairs(columns[i].values, columns[j].values);
      const auto rep = mu_empirical(sample);
      e.available = true;
      e.degenerate = rep.degenerate;
      e.mu = rep.mu;
      e.mu_exact = rep.mu_exact;
      e.n = sample.n();
    } catch (const EmptySampleError&) {
      e.available = false;
    }
    out.entries[i * k + j] = e;
    out.entries[j * k + i] = e;
  });
  return out;
}

}  // namespace subdep
