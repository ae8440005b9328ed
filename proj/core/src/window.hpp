#pragma once

// Row scans of open balls over grid midpoints, shared by the window norms,
// the maximal function and the mean oscillations.

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "amalgam/grid.hpp"

namespace amalgam::detail {

// Index range [first, last] of axis-0 cells whose midpoint lies in the open
// ball B(y, rho) on row (i1, i2). Empty when first > last. The ends are
// settled with midpoint_in_ball so the scan agrees with window_mask exactly.
inline void row_interval(const Grid& g, std::size_t i1, std::size_t i2, const Point& y, double rho,
                         long long& first, long long& last) {
  double perp = 0.0;
  for (int a = 1; a < g.dim(); ++a) {
    const double d = g.midpoint(a, a == 1 ? i1 : i2) - y[a];
    perp += d * d;
  }
  first = 1;
  last = 0;
  if (perp >= rho * rho) return;
  const double half = std::sqrt(rho * rho - perp);
  const double h = g.spacing(0);
  const long long n0 = static_cast<long long>(g.count(0));
  long long lo = static_cast<long long>(std::ceil((y[0] - half - g.lower(0)) / h - 0.5));
  long long hi = static_cast<long long>(std::floor((y[0] + half - g.lower(0)) / h - 0.5));
  lo = std::clamp(lo, 0LL, n0 - 1);
  hi = std::clamp(hi, 0LL, n0 - 1);
  auto inside = [&](long long i0) {
    return midpoint_in_ball(g, Index{static_cast<std::size_t>(i0), i1, i2}, y, rho);
  };
  while (lo > 0 && inside(lo - 1)) --lo;
  while (lo <= hi && !inside(lo)) ++lo;
  while (hi + 1 < n0 && inside(hi + 1)) ++hi;
  while (hi >= lo && !inside(hi)) --hi;
  first = lo;
  last = hi;
}

// Calls row(i1, i2, base, first, last) for every nonempty row of the ball,
// with base the flat index of (0, i1, i2).
template <class Row>
void for_each_ball_row(const Grid& g, const Point& y, double rho, Row&& row) {
  const IndexBox box = ball_index_box(g, y, rho);
  if (box.empty(g.dim())) return;
  for (std::size_t i2 = box.lo[2]; i2 < box.hi[2]; ++i2) {
    for (std::size_t i1 = box.lo[1]; i1 < box.hi[1]; ++i1) {
      long long first = 0;
      long long last = -1;
      row_interval(g, i1, i2, y, rho, first, last);
      if (first > last) continue;
      row(i1, i2, g.flat({0, i1, i2}), static_cast<std::size_t>(first),
          static_cast<std::size_t>(last));
    }
  }
}

// True when the closed ball lies in the box.
inline bool ball_inside_box(const Grid& g, const Point& c, double r) {
  for (int a = 0; a < g.dim(); ++a) {
    if (c[a] - r < g.lower(a) || c[a] + r > g.upper(a)) return false;
  }
  return true;
}

}  // namespace amalgam::detail
