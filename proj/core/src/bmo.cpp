#include "amalgam/bmo.hpp"

#include <algorithm>
#include <cmath>

#include "amalgam/amalgam.hpp"
#include "amalgam/errors.hpp"
#include "reduce.hpp"
#include "window.hpp"

namespace amalgam {

BallFamily BallFamily::default_for(const Grid& grid) {
  double h = 0.0;
  double side = kInf;
  for (int a = 0; a < grid.dim(); ++a) {
    h = std::max(h, grid.spacing(a));
    side = std::min(side, grid.upper(a) - grid.lower(a));
  }
  BallFamily fam;
  int j = static_cast<int>(std::ceil(std::log2(2.0 * h)));
  for (; std::ldexp(1.0, j) <= 0.25 * side; ++j) fam.radii.push_back(std::ldexp(1.0, j));
  if (fam.radii.empty()) throw DomainError("box too small for the default ball family");
  return fam;
}

std::vector<WindowSpec> family_members(const BallFamily& family, const Grid& grid) {
  if (family.stride == 0) throw DomainError("ball family stride must be positive");
  if (family.radii.empty()) throw DomainError("empty ball family");
  std::vector<WindowSpec> out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Index idx = grid.unflat(i);
    bool on_lattice = true;
    for (int a = 0; a < grid.dim(); ++a) on_lattice = on_lattice && idx[a] % family.stride == 0;
    if (!on_lattice) continue;
    const Point c = grid.midpoint(i);
    for (double r : family.radii) {
      if (family.policy == ContainmentPolicy::FullyInside && !detail::ball_inside_box(grid, c, r)) {
        continue;
      }
      out.push_back(WindowSpec::ball(c, r));
    }
  }
  return out;
}

namespace {

void require_real_ball(const GridFunction& b, const WindowSpec& ball) {
  if (b.is_complex()) throw DomainError("BMO symbol must be real");
  if (ball.kind != WindowKind::Ball || !(ball.r > 0.0)) throw DomainError("expected a ball");
}

// Iterated p-norm of value(i) over the ball cells; equal bitwise to the
// mixed norm of value * chi_B over the whole grid.
template <class Value>
double ball_norm(const Grid& g, const Exponents& p, const WindowSpec& ball, Value&& value) {
  const int n = g.dim();
  const IndexBox box = ball_index_box(g, ball.center, ball.r);
  if (box.empty(n)) return 0.0;
  const Exponent inf(kInf);
  detail::AxisReducer r2(n > 2 ? p[2] : inf, n > 2 ? g.spacing(2) : 1.0);
  for (std::size_t i2 = box.lo[2]; i2 < box.hi[2]; ++i2) {
    detail::AxisReducer r1(n > 1 ? p[1] : inf, n > 1 ? g.spacing(1) : 1.0);
    for (std::size_t i1 = box.lo[1]; i1 < box.hi[1]; ++i1) {
      long long first = 0;
      long long last = -1;
      detail::row_interval(g, i1, i2, ball.center, ball.r, first, last);
      if (first > last) continue;
      detail::AxisReducer r0(p[0], g.spacing(0));
      const std::size_t base = g.flat({0, i1, i2});
      for (long long i0 = first; i0 <= last; ++i0) r0.add(value(base + static_cast<std::size_t>(i0)));
      r1.add(r0.result());
    }
    r2.add(r1.result());
  }
  return r2.result();
}

// || (b - b_B) chi_B ||_p / || chi_B ||_p
double normalized_oscillation(const GridFunction& b, const Exponents& p, const WindowSpec& ball) {
  const double mean = ball_mean(b, ball);
  const std::vector<double>& v = b.real();
  const Grid& g = b.grid();
  const double num = ball_norm(g, p, ball, [&](std::size_t i) { return std::abs(v[i] - mean); });
  const double den = ball_norm(g, p, ball, [](std::size_t) { return 1.0; });
  if (den == 0.0) throw DomainError("ball contains no midpoint");
  return num / den;
}

}  // namespace

double ball_mean(const GridFunction& b, const WindowSpec& ball) {
  require_real_ball(b, ball);
  const Grid& g = b.grid();
  detail::Compensated acc;
  std::size_t count = 0;
  detail::for_each_ball_row(g, ball.center, ball.r,
                            [&](std::size_t, std::size_t, std::size_t base, std::size_t first,
                                std::size_t last) {
                              for (std::size_t i0 = first; i0 <= last; ++i0) acc.add(b.real(base + i0));
                              count += last - first + 1;
                            });
  if (count == 0) throw DomainError("ball contains no midpoint");
  return acc.value() / static_cast<double>(count);
}

double mean_oscillation(const GridFunction& b, const WindowSpec& ball) {
  require_real_ball(b, ball);
  return normalized_oscillation(b, uniform_exponents(b.grid().dim(), 1.0), ball);
}

double mixed_bmo_norm(const GridFunction& b, const Exponents& p, const BallFamily& family) {
  if (b.is_complex()) throw DomainError("BMO symbol must be real");
  if (static_cast<int>(p.size()) != b.grid().dim()) throw DomainError("exponent length mismatch");
  const std::vector<WindowSpec> balls = family_members(family, b.grid());
  if (balls.empty()) throw DomainError("ball family has no member inside the box");
  double best = 0.0;
  for (const WindowSpec& ball : balls) best = std::max(best, normalized_oscillation(b, p, ball));
  return best;
}

double bmo_norm(const GridFunction& b, const BallFamily& family) {
  return mixed_bmo_norm(b, uniform_exponents(b.grid().dim(), 1.0), family);
}

DriftReport doubling_drift(const GridFunction& b, const WindowSpec& ball, int j) {
  require_real_ball(b, ball);
  if (j < 0) throw DomainError("doubling depth must be nonnegative");
  const Grid& g = b.grid();
  DriftReport rep;
  for (int k = 0; k <= j + 1; ++k) {
    const WindowSpec bk = WindowSpec::ball(ball.center, std::ldexp(ball.r, k));
    if (!detail::ball_inside_box(g, bk.center, bk.r)) {
      throw DomainError("doubling chain leaves the box");
    }
    rep.chain_bmo = std::max(rep.chain_bmo, mean_oscillation(b, bk));
  }
  const WindowSpec top = WindowSpec::ball(ball.center, std::ldexp(ball.r, j + 1));
  rep.drift = std::abs(ball_mean(b, top) - ball_mean(b, ball));
  rep.bound = (j + 1) * std::exp2(g.dim()) * rep.chain_bmo;
  rep.pass = rep.drift <= rep.bound * (1.0 + 1e-9);
  return rep;
}

}  // namespace amalgam
