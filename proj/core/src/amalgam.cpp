#include "amalgam/amalgam.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "amalgam/errors.hpp"
#include "reduce.hpp"
#include "window.hpp"

namespace amalgam {

// ============================================================================
// Sweeps and the index gate

RadiusSweep RadiusSweep::dyadic(int jmin, int jmax, WindowKind kind) {
  if (jmax < jmin) throw DomainError("empty dyadic sweep");
  RadiusSweep s;
  s.kind = kind;
  for (int j = jmin; j <= jmax; ++j) s.radii.push_back(std::ldexp(1.0, j));
  return s;
}

RadiusSweep RadiusSweep::with(double r) const {
  RadiusSweep s = *this;
  if (std::find(s.radii.begin(), s.radii.end(), r) == s.radii.end()) {
    s.radii.push_back(r);
    std::sort(s.radii.begin(), s.radii.end());
  }
  return s;
}

RadiusSweep RadiusSweep::scaled(double factor) const {
  RadiusSweep s = *this;
  for (double& r : s.radii) r *= factor;
  return s;
}

void RadiusSweep::validate() const {
  if (radii.empty()) throw DomainError("empty radius sweep");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || !std::isfinite(radii[i])) {
      throw DomainError("sweep radii must be positive and finite");
    }
    if (i > 0 && !(radii[i] > radii[i - 1])) {
      throw DomainError("sweep radii must be strictly increasing");
    }
  }
}

namespace {

constexpr double kGateSlack = 1e-14;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

void require_length(const Exponents& p, int n, const char* name) {
  if (static_cast<int>(p.size()) != n) {
    throw DomainError(std::string("exponent vector ") + name + " must have length " +
                      std::to_string(n));
  }
}

}  // namespace

ExponentSystem validate_exponents(const Exponents& p, const Exponents& s, Exponent alpha, int n,
                                  GateMode mode) {
  if (n < 1 || n > kMaxDim) throw DomainError("dimension must be 1, 2 or 3");
  require_length(p, n, "p");
  require_length(s, n, "s");
  ExponentSystem sys;
  sys.n = n;
  sys.p = p;
  sys.s = s;
  sys.alpha = alpha;
  sys.q = p;
  sys.beta = alpha;
  sys.p_conj = conjugate(p);
  sys.s_conj = conjugate(s);
  sys.alpha_conj = alpha.conjugate();

  const double hp = harmonic_mean_inverse(p);
  const double hs = harmonic_mean_inverse(s);
  const double ia = alpha.inverse();
  const bool lower_ok = hs <= ia + kGateSlack;
  const bool upper_ok = ia <= hp + kGateSlack;
  sys.boundary = std::abs(hs - ia) <= kGateSlack || std::abs(ia - hp) <= kGateSlack;
  if (lower_ok && upper_ok) {
    sys.validated = true;
    return sys;
  }
  if (mode == GateMode::Force) {
    sys.forced = true;
    return sys;
  }
  if (!lower_ok) {
    throw IndexGateViolation("index gate: (1/n) sum 1/s_i = " + fmt(hs) +
                             " exceeds 1/alpha = " + fmt(ia));
  }
  throw IndexGateViolation("index gate: 1/alpha = " + fmt(ia) +
                           " exceeds (1/n) sum 1/p_i = " + fmt(hp));
}

ExponentSystem with_target(ExponentSystem sys, const Exponents& q, Exponent beta, double gamma,
                           GateMode mode) {
  if (!(gamma > 0.0) || !(gamma < sys.n)) throw DomainError("gamma must lie in (0, n)");
  const ExponentSystem target = validate_exponents(q, sys.s, beta, sys.n, mode);
  sys.q = q;
  sys.beta = beta;
  sys.gamma = gamma;
  sys.forced = sys.forced || target.forced;
  sys.validated = sys.validated && target.validated;
  sys.boundary = sys.boundary || target.boundary;
  return sys;
}

double unit_ball_volume(int n) {
  switch (n) {
    case 1: return 2.0;
    case 2: return std::numbers::pi;
    case 3: return 4.0 * std::numbers::pi / 3.0;
    default: throw DomainError("dimension must be 1, 2 or 3");
  }
}

double unit_volume_radius(int n) {
  if (n == 1) return 0.5;
  return std::pow(unit_ball_volume(n), -1.0 / n);
}

// ============================================================================
// Ball windows

namespace {

bool near_integer(double x, double& rounded) {
  rounded = std::round(x);
  return std::abs(x - rounded) <= 1e-9 * std::max(1.0, std::abs(x));
}

// Raised samples for the innermost axis: |f|^{p_1}, or |f| when p_1 = inf or
// when some nonzero sample would leave the normal range once raised.
std::vector<double> raised_samples(const GridFunction& f, const Exponent& p0, bool& raised) {
  std::vector<double> a = f.abs_values();
  raised = !p0.is_infinite();
  if (!raised) return a;
  std::vector<double> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    r[i] = detail::raise(a[i], p0);
    if (a[i] != 0.0 && !std::isnormal(r[i])) {
      raised = false;
      return a;
    }
  }
  return r;
}

double window_norm_at(const Grid& g, const std::vector<double>& samples, bool raised,
                      const Exponents& p, const Point& y, double rho) {
  const int n = g.dim();
  const IndexBox box = ball_index_box(g, y, rho);
  if (box.empty(n)) return 0.0;
  const Exponent inf(kInf);
  const Exponent e1 = n > 1 ? p[1] : inf;
  const Exponent e2 = n > 2 ? p[2] : inf;
  detail::AxisReducer r2(e2, n > 2 ? g.spacing(2) : 1.0);
  for (std::size_t i2 = box.lo[2]; i2 < box.hi[2]; ++i2) {
    detail::AxisReducer r1(e1, n > 1 ? g.spacing(1) : 1.0);
    for (std::size_t i1 = box.lo[1]; i1 < box.hi[1]; ++i1) {
      long long first = 0;
      long long last = -1;
      detail::row_interval(g, i1, i2, y, rho, first, last);
      if (first > last) continue;
      detail::AxisReducer r0(p[0], g.spacing(0));
      const std::size_t base = g.flat({0, i1, i2});
      if (raised) {
        for (long long i0 = first; i0 <= last; ++i0) r0.add_raised(samples[base + i0]);
      } else {
        for (long long i0 = first; i0 <= last; ++i0) r0.add(samples[base + i0]);
      }
      r1.add(r0.result());
    }
    r2.add(r1.result());
  }
  return r2.result();
}

}  // namespace

bool tiles(const Grid& grid, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) return false;
  for (int a = 0; a < grid.dim(); ++a) {
    double m = 0.0;
    double lo = 0.0;
    if (!near_integer(r / grid.spacing(a), m) || m < 1.0) return false;
    if (!near_integer(grid.lower(a) / grid.spacing(a), lo)) return false;
  }
  return true;
}

GridFunction ball_window_norms(const GridFunction& f, const Exponents& p, double rho) {
  const Grid& g = f.grid();
  detail::require_exponents(p, g.dim());
  if (!(rho > 0.0) || !std::isfinite(rho)) throw DomainError("window radius must be positive");
  bool raised = false;
  const std::vector<double> samples = raised_samples(f, p[0], raised);
  std::vector<double> out(g.size(), 0.0);
  for (std::size_t c = 0; c < g.size(); ++c) out[c] = window_norm_at(g, samples, raised, p, g.midpoint(c), rho);
  return GridFunction(g, std::move(out));
}

void require_window_margin(const GridFunction& f, double rho) {
  const Grid& g = f.grid();
  const double threshold = 1e-12 * f.max_abs();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (f.abs(i) <= threshold) continue;
    const Index idx = g.unflat(i);
    for (int a = 0; a < g.dim(); ++a) {
      const double x = g.midpoint(a, idx[a]);
      const double slack = 0.25 * g.spacing(a);
      if (x - rho < g.lower(a) - slack || x + rho > g.upper(a) + slack) {
        throw DomainError("box too small: support plus window radius " + fmt(rho) +
                          " leaves the box");
      }
    }
  }
}

double global_amalgam_norm(const GridFunction& f, const Exponents& p, const Exponents& s,
                           double rho) {
  detail::require_exponents(s, f.grid().dim());
  require_window_margin(f, rho);
  return mixed_lebesgue_norm(ball_window_norms(f, p, rho), s);
}

namespace {

void require_usable(const ExponentSystem& sys, const Grid& g) {
  if (!sys.validated && !sys.forced) throw DomainError("unvalidated exponent system");
  if (sys.n != g.dim()) throw DomainError("exponent system dimension differs from grid");
}

SupResult sup_of(std::vector<double> terms, const std::vector<double>& radii) {
  SupResult out;
  out.terms = std::move(terms);
  out.value = out.terms.front();
  out.argmax = radii.front();
  for (std::size_t i = 1; i < out.terms.size(); ++i) {
    if (out.terms[i] > out.value) {
      out.value = out.terms[i];
      out.argmax = radii[i];
    }
  }
  return out;
}

double ball_weight(const ExponentSystem& sys, double r) {
  const double e = sys.alpha.inverse() - sys.hm_p() - sys.hm_s();
  if (e == 0.0) return 1.0;
  return std::pow(unit_ball_volume(sys.n) * std::pow(r, sys.n), e);
}

double cube_weight(const ExponentSystem& sys, const Exponents& p, Exponent alpha, double r) {
  const double e = sys.n * alpha.inverse() - sum_inverse(p);
  if (e == 0.0) return 1.0;
  return std::pow(r, e);
}

}  // namespace

SupResult alpha_amalgam_norm(const GridFunction& f, const ExponentSystem& sys,
                             const RadiusSweep& sweep) {
  require_usable(sys, f.grid());
  sweep.validate();
  std::vector<double> terms;
  terms.reserve(sweep.radii.size());
  for (double r : sweep.radii) {
    terms.push_back(ball_weight(sys, r) * global_amalgam_norm(f, sys.p, sys.s, r));
  }
  return sup_of(std::move(terms), sweep.radii);
}

// ============================================================================
// Cube lattices

namespace {

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

struct AxisTiling {
  long long cells_per_cube = 1;
  long long offset = 0;  // lower bound in cells
  long long k_min = 0;
  long long k_max = 0;
};

AxisTiling axis_tiling(const Grid& g, int a, double r) {
  AxisTiling t;
  double m = 0.0;
  double lo = 0.0;
  near_integer(r / g.spacing(a), m);
  near_integer(g.lower(a) / g.spacing(a), lo);
  t.cells_per_cube = static_cast<long long>(m);
  t.offset = static_cast<long long>(lo);
  const long long n = static_cast<long long>(g.count(a));
  t.k_min = floor_div(t.offset, t.cells_per_cube);
  t.k_max = floor_div(t.offset + n - 1, t.cells_per_cube);
  return t;
}

}  // namespace

LatticeArray cube_norms(const GridFunction& f, const Exponents& p, double r) {
  const Grid& g = f.grid();
  const int n = g.dim();
  detail::require_exponents(p, n);
  if (!tiles(g, r)) throw DomainError("radius does not tile the grid");

  std::array<AxisTiling, kMaxDim> t{};
  LatticeIndex lower{};
  Index extent{1, 1, 1};
  for (int a = 0; a < n; ++a) {
    t[a] = axis_tiling(g, a, r);
    lower[a] = t[a].k_min;
    extent[a] = static_cast<std::size_t>(t[a].k_max - t[a].k_min + 1);
  }
  LatticeArray out(n, lower, extent);
  const std::vector<double> a = f.abs_values();
  const double h[3] = {g.spacing(0), n > 1 ? g.spacing(1) : 1.0, n > 2 ? g.spacing(2) : 1.0};

  for (std::size_t k2 = 0; k2 < extent[2]; ++k2) {
    for (std::size_t k1 = 0; k1 < extent[1]; ++k1) {
      for (std::size_t k0 = 0; k0 < extent[0]; ++k0) {
        const std::size_t kk[3] = {k0, k1, k2};
        LatticeIndex key{};
        Index lo{0, 0, 0};
        Index hi{1, 1, 1};
        for (int ax = 0; ax < n; ++ax) {
          key[ax] = t[ax].k_min + static_cast<long long>(kk[ax]);
          const long long first = key[ax] * t[ax].cells_per_cube - t[ax].offset;
          const long long last = first + t[ax].cells_per_cube;
          const long long cells = static_cast<long long>(g.count(ax));
          lo[ax] = static_cast<std::size_t>(std::clamp(first, 0LL, cells));
          hi[ax] = static_cast<std::size_t>(std::clamp(last, 0LL, cells));
        }
        const double v = detail::reduce_box(n, lo, hi, p, h,
                                            [&](std::size_t i0, std::size_t i1, std::size_t i2) {
                                              return a[g.flat({i0, i1, i2})];
                                            });
        out.set(key, v);
      }
    }
  }
  return out;
}

double discrete_amalgam_norm(const GridFunction& f, const Exponents& p, const Exponents& s,
                             double r) {
  detail::require_exponents(s, f.grid().dim());
  return mixed_sequence_norm(cube_norms(f, p, r), s);
}

SupResult discrete_alpha_norm(const GridFunction& f, const ExponentSystem& sys,
                              const RadiusSweep& sweep) {
  require_usable(sys, f.grid());
  sweep.validate();
  std::vector<double> terms;
  terms.reserve(sweep.radii.size());
  for (double r : sweep.radii) {
    terms.push_back(cube_weight(sys, sys.p, sys.alpha, r) *
                    discrete_amalgam_norm(f, sys.p, sys.s, r));
  }
  return sup_of(std::move(terms), sweep.radii);
}

// ============================================================================
// Equivalences and embeddings

RatioRange equivalence_ratio(const GridFunction& f, const ExponentSystem& sys,
                             EquivalenceMode mode, const std::vector<double>& radii, double rho) {
  require_usable(sys, f.grid());
  if (f.max_abs() == 0.0) throw DomainError("zero function");
  if (radii.empty()) throw DomainError("empty radius list");
  RatioRange out;
  for (double r : radii) {
    double num = 0.0;
    double den = 0.0;
    switch (mode) {
      case EquivalenceMode::BallVsScaledBall:
        num = global_amalgam_norm(f, sys.p, sys.s, rho * r);
        den = global_amalgam_norm(f, sys.p, sys.s, r);
        break;
      case EquivalenceMode::CubeVsBall:
        num = std::pow(r, -sum_inverse(sys.s)) * global_amalgam_norm(f, sys.p, sys.s, r);
        den = discrete_amalgam_norm(f, sys.p, sys.s, r);
        break;
      case EquivalenceMode::ContinuousVsDiscrete:
        num = ball_weight(sys, r) * global_amalgam_norm(f, sys.p, sys.s, r);
        den = cube_weight(sys, sys.p, sys.alpha, r) * discrete_amalgam_norm(f, sys.p, sys.s, r);
        break;
    }
    out.ratios.push_back(num / den);
  }
  out.min_ratio = *std::min_element(out.ratios.begin(), out.ratios.end());
  out.max_ratio = *std::max_element(out.ratios.begin(), out.ratios.end());
  return out;
}

EmbeddingReport embedding_check(const GridFunction& f, const Exponents& p, const Exponents& q,
                                const Exponents& s, Exponent alpha, const RadiusSweep& sweep) {
  const int n = f.grid().dim();
  require_length(p, n, "p");
  require_length(q, n, "q");
  for (int i = 0; i < n; ++i) {
    if (p[i].inverse() < q[i].inverse()) throw DomainError("embedding needs p <= q entrywise");
  }
  const ExponentSystem sp = validate_exponents(p, s, alpha, n);
  const ExponentSystem sq = validate_exponents(q, s, alpha, n);
  EmbeddingReport rep;
  rep.window_radius = unit_volume_radius(n);
  const RadiusSweep full = sweep.with(rep.window_radius);
  rep.global_norm = global_amalgam_norm(f, p, s, rep.window_radius);
  rep.alpha_p = alpha_amalgam_norm(f, sp, full).value;
  rep.alpha_q = alpha_amalgam_norm(f, sq, full).value;
  constexpr double slack = 1e-12;
  rep.global_below_alpha = rep.global_norm <= rep.alpha_p * (1.0 + slack);
  rep.p_below_q = rep.alpha_p <= rep.alpha_q * (1.0 + slack);
  rep.pass = rep.global_below_alpha && rep.p_below_q;
  return rep;
}

}  // namespace amalgam
