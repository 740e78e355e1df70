#pragma once

// Shared sup-search machinery for the grid measures. Exact grids run these
// templates with T = int64_t (levels are numerators, `scale` is the common
// denominator, differences come out in units of 1/den^2); floating grids use
// T = double with scale = 1.

#include "subdep/subcopula.hpp"

#include <algorithm>
#include <span>

namespace subdep::detail {

template <class T>
struct DiffScan {
  T sup_pos{};
  T sup_neg{};
  std::size_t pos_i = 0, pos_j = 0;
  std::size_t neg_i = 0, neg_j = 0;

  // Row-major callers feed points in order; strict comparison keeps the first.
  void offer(T diff, std::size_t i, std::size_t j) {
    if (diff > sup_pos) {
      sup_pos = diff;
      pos_i = i;
      pos_j = j;
    } else if (-diff > sup_neg) {
      sup_neg = -diff;
      neg_i = i;
      neg_j = j;
    }
  }
};

// S(u, v) - u v in the scaled units.
template <class T>
inline T scaled_diff(T s, T u, T v, T scale) {
  return s * scale - u * v;
}

/// sup(M - Pi) and sup(Pi - W) over u x v. For fixed u both differences are
/// unimodal in v (nondecreasing up to the kink, nonincreasing after), so only
/// the two grid neighbours of the kink need checking.
template <class T>
struct BoundSups {
  T m_minus_pi{};
  T pi_minus_w{};
};

template <class T>
BoundSups<T> bound_sups(std::span<const T> u, std::span<const T> v, T scale) {
  BoundSups<T> out{};
  auto eval_m = [&](T a, T b) { return std::min(a, b) * scale - a * b; };
  auto eval_w = [&](T a, T b) {
    const T w = std::max<T>(a + b - scale, T{0});
    return a * b - w * scale;
  };
  for (const T a : u) {
    // kink of M - Pi at v = u
    auto hi = std::lower_bound(v.begin(), v.end(), a);
    if (hi != v.end()) out.m_minus_pi = std::max(out.m_minus_pi, eval_m(a, *hi));
    if (hi != v.begin()) out.m_minus_pi = std::max(out.m_minus_pi, eval_m(a, *(hi - 1)));
    // kink of Pi - W at v = 1 - u
    const T target = scale - a;
    auto hw = std::lower_bound(v.begin(), v.end(), target);
    if (hw != v.end()) out.pi_minus_w = std::max(out.pi_minus_w, eval_w(a, *hw));
    if (hw != v.begin()) out.pi_minus_w = std::max(out.pi_minus_w, eval_w(a, *(hw - 1)));
  }
  return out;
}

/// Assembles a DependenceReport from a finished scan of S - Pi_S.
DependenceReport finish_exact(const GridDomain& d1, const GridDomain& d2,
                              const DiffScan<std::int64_t>& scan, bool with_bounds);
DependenceReport finish_floating(const GridDomain& d1, const GridDomain& d2,
                                 const DiffScan<double>& scan, bool with_bounds);

}  // namespace subdep::detail
