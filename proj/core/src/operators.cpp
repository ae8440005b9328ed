#include "amalgam/operators.hpp"

#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>

#include "amalgam/errors.hpp"
#include "reduce.hpp"
#include "window.hpp"

namespace amalgam {

namespace {

void require_gamma(double gamma, int n) {
  if (!(gamma > 0.0) || !(gamma < static_cast<double>(n))) {
    throw DomainError("gamma must lie in (0, n)");
  }
}

}  // namespace

double riesz_constant(double gamma, int n) {
  if (n < 1 || n > kMaxDim) throw DomainError("dimension must be 1, 2 or 3");
  require_gamma(gamma, n);
  const double log_inv = 0.5 * n * std::log(std::numbers::pi) + gamma * std::numbers::ln2 +
                         std::lgamma(0.5 * gamma) - std::lgamma(0.5 * (n - gamma));
  const double c = std::exp(-log_inv);
  if (!std::isfinite(c) || !(c > 0.0)) throw DomainError("Riesz constant not finite");
  return c;
}

SelfCellRule self_cell_rule(int n) {
  switch (n) {
    case 1: return SelfCellRule::ExactCells;
    case 2: return SelfCellRule::PolarCell;
    case 3: return SelfCellRule::InscribedBall;
    default: throw DomainError("dimension must be 1, 2 or 3");
  }
}

bool self_cell_exact(int n) { return self_cell_rule(n) != SelfCellRule::InscribedBall; }

double self_cell_mass(const Grid& grid, double gamma) {
  const int n = grid.dim();
  require_gamma(gamma, n);
  switch (self_cell_rule(n)) {
    case SelfCellRule::ExactCells:
      return 2.0 * std::pow(0.5 * grid.spacing(0), gamma) / gamma;
    case SelfCellRule::PolarCell: {
      // One quadrant of the rectangle [-a, a] x [-b, b]; the radial integral
      // of r^{gamma-1} up to the boundary distance R(theta) is R^gamma/gamma.
      const double a = 0.5 * grid.spacing(0);
      const double b = 0.5 * grid.spacing(1);
      const double split = std::atan2(b, a);
      using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
      const double near_x = GK::integrate(
          [&](double t) { return std::pow(a / std::cos(t), gamma); }, 0.0, split, 10, 1e-15);
      const double near_y = GK::integrate(
          [&](double t) { return std::pow(b / std::sin(t), gamma); }, split,
          0.5 * std::numbers::pi, 10, 1e-15);
      return 4.0 * (near_x + near_y) / gamma;
    }
    case SelfCellRule::InscribedBall: {
      double rho = grid.spacing(0);
      for (int a = 1; a < n; ++a) rho = std::min(rho, grid.spacing(a));
      rho *= 0.5;
      return 4.0 * std::numbers::pi * std::pow(rho, gamma) / gamma;
    }
  }
  return 0.0;
}

// ============================================================================
// I_gamma

namespace {

// Kernel weights over all offsets d with |d_a| < N_a, stored with offset
// d_a + N_a - 1 along each axis (axis 0 fastest). Excludes C_gamma.
struct OffsetKernel {
  Index ext{1, 1, 1};
  Index shift{0, 0, 0};
  std::vector<double> w;

  double at(long long d0, long long d1, long long d2) const {
    return w[static_cast<std::size_t>(d0 + static_cast<long long>(shift[0])) +
             ext[0] * (static_cast<std::size_t>(d1 + static_cast<long long>(shift[1])) +
                       ext[1] * static_cast<std::size_t>(d2 + static_cast<long long>(shift[2])))];
  }
};

// int over the cell at offset d of |u|^{gamma-1} du in units of h^gamma.
double exact_cell_1d(long long d, double gamma) {
  if (d == 0) return 2.0 * std::pow(0.5, gamma) / gamma;
  const double near = static_cast<double>(std::llabs(d)) - 0.5;
  // (near + 1)^gamma - near^gamma without cancellation.
  return std::pow(near, gamma) * std::expm1(gamma * std::log1p(1.0 / near)) / gamma;
}

OffsetKernel offset_kernel(const Grid& g, double gamma) {
  const int n = g.dim();
  OffsetKernel k;
  for (int a = 0; a < n; ++a) {
    k.shift[a] = g.count(a) - 1;
    k.ext[a] = 2 * g.count(a) - 1;
  }
  k.w.assign(k.ext[0] * k.ext[1] * k.ext[2], 0.0);
  if (n == 1) {
    const double scale = std::pow(g.spacing(0), gamma);
    for (std::size_t i = 0; i < k.ext[0]; ++i) {
      const long long d = static_cast<long long>(i) - static_cast<long long>(k.shift[0]);
      k.w[i] = scale * exact_cell_1d(d, gamma);
    }
    return k;
  }
  const double vol = g.cell_volume();
  const double e = gamma - n;
  for (std::size_t i2 = 0; i2 < k.ext[2]; ++i2) {
    for (std::size_t i1 = 0; i1 < k.ext[1]; ++i1) {
      for (std::size_t i0 = 0; i0 < k.ext[0]; ++i0) {
        const std::size_t ii[3] = {i0, i1, i2};
        double r2 = 0.0;
        for (int a = 0; a < n; ++a) {
          const double x =
              (static_cast<double>(ii[a]) - static_cast<double>(k.shift[a])) * g.spacing(a);
          r2 += x * x;
        }
        const std::size_t flat = i0 + k.ext[0] * (i1 + k.ext[1] * i2);
        k.w[flat] = r2 == 0.0 ? self_cell_mass(g, gamma) : vol * std::pow(std::sqrt(r2), e);
      }
    }
  }
  return k;
}

// Rows of the source that carry nonzero samples, with their axis-0 extent.
struct SourceRow {
  std::size_t i1;
  std::size_t i2;
  std::size_t first;
  std::size_t last;
};

std::vector<SourceRow> source_rows(const Grid& g, const std::vector<double>& v) {
  std::vector<SourceRow> rows;
  const std::size_t n0 = g.count(0);
  for (std::size_t i2 = 0; i2 < g.count(2); ++i2) {
    for (std::size_t i1 = 0; i1 < g.count(1); ++i1) {
      const std::size_t base = g.flat({0, i1, i2});
      std::size_t first = n0;
      std::size_t last = 0;
      for (std::size_t i0 = 0; i0 < n0; ++i0) {
        if (v[base + i0] != 0.0) {
          first = std::min(first, i0);
          last = i0;
        }
      }
      if (first < n0) rows.push_back({i1, i2, first, last});
    }
  }
  return rows;
}

std::vector<double> convolve(const Grid& g, const OffsetKernel& k, const std::vector<double>& v,
                             double c) {
  std::vector<double> out(g.size(), 0.0);
  const std::vector<SourceRow> rows = source_rows(g, v);
  if (rows.empty()) return out;
  const long long s0 = static_cast<long long>(k.shift[0]);
  for (std::size_t x2 = 0; x2 < g.count(2); ++x2) {
    for (std::size_t x1 = 0; x1 < g.count(1); ++x1) {
      for (std::size_t x0 = 0; x0 < g.count(0); ++x0) {
        detail::Compensated acc;
        for (const SourceRow& row : rows) {
          const long long d1 = static_cast<long long>(x1) - static_cast<long long>(row.i1);
          const long long d2 = static_cast<long long>(x2) - static_cast<long long>(row.i2);
          // Kernel row for (d1, d2), indexed by x0 - y0 + shift.
          const double* kr = &k.w[k.ext[0] * (static_cast<std::size_t>(d1 + k.shift[1]) +
                                              k.ext[1] * static_cast<std::size_t>(d2 + k.shift[2]))];
          const double* src = &v[g.flat({0, row.i1, row.i2})];
          const long long base = static_cast<long long>(x0) + s0;
          for (std::size_t y0 = row.first; y0 <= row.last; ++y0) {
            acc.add(kr[base - static_cast<long long>(y0)] * src[y0]);
          }
        }
        out[g.flat({x0, x1, x2})] = c * acc.value();
      }
    }
  }
  return out;
}

}  // namespace

GridFunction fractional_integral(const GridFunction& f, double gamma) {
  const Grid& g = f.grid();
  const double c = riesz_constant(gamma, g.dim());
  const OffsetKernel k = offset_kernel(g, gamma);
  std::vector<double> re = convolve(g, k, f.real(), c);
  if (!f.is_complex()) return GridFunction(g, std::move(re));
  std::vector<double> im = convolve(g, k, f.imag(), c);
  return GridFunction(g, std::move(re), std::move(im));
}

// ============================================================================
// M_gamma

GridFunction fractional_maximal(const GridFunction& f, double gamma, const RadiusSweep& sweep,
                                const MaximalOptions& options) {
  const Grid& g = f.grid();
  const int n = g.dim();
  require_gamma(gamma, n);
  sweep.validate();
  if (options.center_stride == 0) throw DomainError("center stride must be positive");
  const std::vector<double> a = f.abs_values();
  const double vol = g.cell_volume();
  const double vn = unit_ball_volume(n);

  auto average = [&](const Point& c, double r) {
    detail::Compensated acc;
    detail::for_each_ball_row(g, c, r, [&](std::size_t, std::size_t, std::size_t base,
                                           std::size_t first, std::size_t last) {
      for (std::size_t i0 = first; i0 <= last; ++i0) acc.add(a[base + i0]);
    });
    return std::pow(vn * std::pow(r, n), gamma / n - 1.0) * acc.value() * vol;
  };

  std::vector<double> out(g.size(), 0.0);
  if (options.variant == MaximalVariant::Centered) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      const Point x = g.midpoint(i);
      for (double r : sweep.radii) {
        if (options.inside_only && !detail::ball_inside_box(g, x, r)) continue;
        out[i] = std::max(out[i], average(x, r));
      }
    }
    return GridFunction(g, std::move(out));
  }

  const std::size_t stride = options.center_stride;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Index idx = g.unflat(i);
    bool on_lattice = true;
    for (int ax = 0; ax < n; ++ax) on_lattice = on_lattice && idx[ax] % stride == 0;
    if (!on_lattice) continue;
    const Point c = g.midpoint(i);
    for (double r : sweep.radii) {
      if (options.inside_only && !detail::ball_inside_box(g, c, r)) continue;
      const double v = average(c, r);
      detail::for_each_ball_row(g, c, r, [&](std::size_t, std::size_t, std::size_t base,
                                             std::size_t first, std::size_t last) {
        for (std::size_t i0 = first; i0 <= last; ++i0) {
          out[base + i0] = std::max(out[base + i0], v);
        }
      });
    }
  }
  return GridFunction(g, std::move(out));
}

// ============================================================================
// Commutator and dilations

GridFunction commutator(const GridFunction& b, const GridFunction& f, double gamma) {
  require_same_grid(b, f);
  if (b.is_complex()) throw DomainError("commutator symbol must be real");
  return b * fractional_integral(f, gamma) - fractional_integral(b * f, gamma);
}

bool is_dyadic(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) return false;
  int e = 0;
  return std::frexp(t, &e) == 0.5;
}

GridFunction dilate(const GridFunction& f, double t) {
  if (!is_dyadic(t)) throw DomainError("non-dyadic dilation factor");
  const Grid g = f.grid().scaled(1.0 / t);
  if (f.is_complex()) return GridFunction(g, f.real(), f.imag());
  return GridFunction(g, f.real());
}

GridFunction st_dilation(const GridFunction& f, double r, Exponent alpha) {
  if (!is_dyadic(r)) throw DomainError("non-dyadic dilation factor");
  if (r == 1.0) return f;
  const double k = std::log2(r);  // exact integer
  const double factor = std::exp2(-f.grid().dim() * alpha.inverse() * k);
  const GridFunction moved = dilate(f, 1.0 / r);
  return factor * moved;
}

double heat_kernel_reconstruction(double gamma, int n, double d) {
  if (n < 1 || n > kMaxDim) throw DomainError("dimension must be 1, 2 or 3");
  require_gamma(gamma, n);
  if (!(d > 0.0) || !std::isfinite(d)) throw DomainError("separation must be positive");
  // u = d^2/(4t) turns the time integral into
  //   pi^{-n/2} 2^{-gamma} d^{gamma-n} / Gamma(gamma/2) * int_0^inf u^{a-1} e^{-u} du
  // with a = (n - gamma)/2. The u integral is done numerically.
  const double a = 0.5 * (n - gamma);
  auto integrand = [a](double u) { return std::exp((a - 1.0) * std::log(u) - u); };
  boost::math::quadrature::tanh_sinh<double> head;
  boost::math::quadrature::exp_sinh<double> tail;
  const double inner = head.integrate(integrand, 0.0, 1.0, 1e-14) +
                       tail.integrate([&](double u) { return integrand(u + 1.0); }, 1e-14);
  const double prefactor = std::pow(std::numbers::pi, -0.5 * n) * std::exp2(-gamma) *
                           std::pow(d, gamma - n) / std::tgamma(0.5 * gamma);
  return prefactor * inner;
}

// ============================================================================
// Annular estimate

AnnularReport annular_estimate(const GridFunction& f, double gamma, const Point& center, double r,
                               int jmax) {
  const Grid& g = f.grid();
  const int n = g.dim();
  require_gamma(gamma, n);
  if (!(r > 0.0)) throw DomainError("ball radius must be positive");
  if (jmax < 1) throw DomainError("annular estimate needs jmax >= 1");
  const std::vector<double> a = f.abs_values();
  double outside = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (a[i] == 0.0) continue;
    if (midpoint_in_ball(g, g.unflat(i), center, 2.0 * r)) {
      throw DomainError("f must vanish on 2B");
    }
    if (!midpoint_in_ball(g, g.unflat(i), center, std::ldexp(r, jmax + 1))) outside += a[i];
  }
  if (outside != 0.0) throw DomainError("support of f extends beyond the last annulus");

  const double vn = unit_ball_volume(n);
  detail::Compensated sum;
  for (int j = 1; j <= jmax; ++j) {
    const double rj = std::ldexp(r, j + 1);
    detail::Compensated mass;
    detail::for_each_ball_row(g, center, rj, [&](std::size_t, std::size_t, std::size_t base,
                                                 std::size_t first, std::size_t last) {
      for (std::size_t i0 = first; i0 <= last; ++i0) mass.add(a[base + i0]);
    });
    sum.add(std::pow(vn * std::pow(rj, n), gamma / n - 1.0) * mass.value() * g.cell_volume());
  }

  AnnularReport rep;
  rep.derived_constant =
      riesz_constant(gamma, n) * std::pow(4.0, n - gamma) * std::pow(vn, 1.0 - gamma / n);
  const GridFunction potential = fractional_integral(abs(f), gamma);
  const double denom = sum.value();
  if (denom == 0.0) {
    rep.pass = true;
    return rep;
  }
  detail::for_each_ball_row(g, center, r, [&](std::size_t, std::size_t, std::size_t base,
                                              std::size_t first, std::size_t last) {
    for (std::size_t i0 = first; i0 <= last; ++i0) {
      rep.max_ratio = std::max(rep.max_ratio, potential.real(base + i0) / denom);
    }
  });
  rep.pass = rep.max_ratio <= rep.derived_constant * (1.0 + 1e-9);
  return rep;
}

}  // namespace amalgam
