#include <algorithm>
#include <cmath>
#include <numbers>

#include "amalgam/errors.hpp"
#include "amalgam/harness.hpp"
#include "amalgam/operators.hpp"
#include "amalgam/predual.hpp"
#include "reduce.hpp"

namespace amalgam {

GridFunction random_function(const Grid& grid, std::uint64_t seed, double spread) {
  FieldSpec spec = random_bump_sum(seed);
  spec.params["spread"] = {spread};
  return sample(spec, grid);
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("line fit needs two or more points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw DomainError("line fit needs distinct abscissae");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

namespace {

// (q, s, beta) as a system of its own, for the discrete norm of outputs.
ExponentSystem target_system(const ExponentSystem& sys) {
  return validate_exponents(sys.q, sys.s, sys.beta, sys.n,
                            sys.forced ? GateMode::Force : GateMode::Enforce);
}

void require_operator_system(const ExponentSystem& sys) {
  if (!sys.validated && !sys.forced) throw DomainError("unvalidated exponent system");
  if (!(sys.gamma > 0.0) || !(sys.gamma < sys.n)) throw DomainError("gamma must lie in (0, n)");
}

}  // namespace

// ============================================================================
// I_gamma scaling

HlsReport hls_ratio_sweep(const ExponentSystem& sys, const std::vector<GridFunction>& family,
                          const std::vector<double>& dilations, const RadiusSweep& sweep) {
  require_operator_system(sys);
  if (dilations.size() < 2) throw DomainError("scaling sweep needs two or more dilations");
  const ExponentSystem tsys = target_system(sys);
  HlsReport rep;
  rep.dilations = dilations;
  const double n = sys.n;
  rep.predicted_slope = n * sys.alpha.inverse() - n * sys.beta.inverse() - sys.gamma;
  rep.matched = std::abs(rep.predicted_slope) < 1e-12;
  std::vector<double> logt;
  for (double t : dilations) logt.push_back(std::log(t));

  for (const GridFunction& f : family) {
    if (f.max_abs() == 0.0) continue;  // ratio undefined
    std::vector<double> ratios;
    std::vector<double> logr;
    for (double t : dilations) {
      const GridFunction ft = dilate(f, t);
      const RadiusSweep st = sweep.scaled(1.0 / t);
      const double num = discrete_alpha_norm(fractional_integral(ft, sys.gamma), tsys, st).value;
      const double den = discrete_alpha_norm(ft, sys, st).value;
      ratios.push_back(num / den);
      logr.push_back(std::log(num / den));
    }
    const LineFit fit = fit_line(logt, logr);
    rep.slopes.push_back(fit.slope);
    rep.max_slope_error = std::max(rep.max_slope_error, std::abs(fit.slope - rep.predicted_slope));
    const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
    rep.max_spread = std::max(rep.max_spread, *hi / *lo);
    rep.ratios.push_back(std::move(ratios));
  }
  if (rep.ratios.empty()) throw DomainError("scaling sweep family has no nonzero function");
  rep.pass = rep.matched ? rep.max_spread <= 4.0 : rep.max_slope_error <= 0.05;
  return rep;
}

// ============================================================================
// Commutator upper bound

CommutatorUpperReport commutator_upper_sweep(
    const std::vector<std::vector<std::pair<GridFunction, GridFunction>>>& groups,
    const ExponentSystem& sys, const RadiusSweep& sweep) {
  require_operator_system(sys);
  const ExponentSystem tsys = target_system(sys);
  CommutatorUpperReport rep;
  for (const auto& group : groups) {
    double group_max = 0.0;
    bool any = false;
    for (const auto& [b, f] : group) {
      const double fnorm = discrete_alpha_norm(f, sys, sweep).value;
      if (fnorm == 0.0) continue;
      const double num =
          discrete_alpha_norm(commutator(b, f, sys.gamma), tsys, sweep).value;
      const double bnorm = bmo_norm(b, BallFamily::default_for(b.grid()));
      // A constant symbol has oscillation at rounding level only.
      if (bnorm <= 1e-13 * std::max(1.0, b.max_abs())) {
        if (num > 1e-9 * std::max(1.0, b.max_abs()) * fnorm) {
          throw Error("commutator with a constant symbol is not zero");
        }
        continue;
      }
      const double ratio = num / (bnorm * fnorm);
      rep.ratios.push_back(ratio);
      group_max = std::max(group_max, ratio);
      any = true;
    }
    if (any) rep.group_constants.push_back(group_max);
  }
  if (rep.group_constants.empty()) throw DomainError("commutator sweep has no usable pair");
  std::vector<double> sorted = rep.group_constants;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t k = sorted.size();
  rep.median_constant = k % 2 ? sorted[k / 2] : 0.5 * (sorted[k / 2 - 1] + sorted[k / 2]);
  rep.pass = true;
  for (double c : rep.group_constants) {
    if (c < 0.5 * rep.median_constant || c > 1.5 * rep.median_constant) rep.pass = false;
  }
  return rep;
}

// ============================================================================
// Lower-bound probe

namespace {

// Smooth step: 1 for x <= 0, 0 for x >= 1.
double smooth_step(double x) {
  if (x <= 0.0) return 1.0;
  if (x >= 1.0) return 0.0;
  const double a = std::exp(-1.0 / (1.0 - x));
  const double b = std::exp(-1.0 / x);
  return a / (a + b);
}

void require_probe_geometry(int n, const Point& z0, double period) {
  double r2 = 0.0;
  double linf = 0.0;
  for (int a = 0; a < n; ++a) {
    r2 += z0[a] * z0[a];
    linf = std::max(linf, std::abs(z0[a]));
  }
  if (std::sqrt(r2) < 2.0) throw DomainError("z0 must satisfy 0 not in B(z0, 2)");
  if (!(period > 5.0)) throw DomainError("period cell must be wider than 5");
  if (!(linf > 0.5 * period)) throw DomainError("period cell around z0 must exclude the origin");
}

}  // namespace

std::vector<std::complex<double>> kernel_fourier_coefficients(int n, double gamma, const Point& z0,
                                                              int M, double period,
                                                              std::size_t points) {
  if (n < 1 || n > kMaxDim) throw DomainError("dimension must be 1, 2 or 3");
  if (!(gamma > 0.0) || !(gamma < n)) throw DomainError("gamma must lie in (0, n)");
  if (M < 0) throw DomainError("cutoff must be nonnegative");
  if (points < 8) throw DomainError("too few quadrature points");
  require_probe_geometry(n, z0, period);
  const double L = period;
  const double outer = 0.5 * L - 0.5;
  const std::size_t P = points;
  const std::size_t K = static_cast<std::size_t>(2 * M + 1);

  // Samples of |u|^{n-gamma} psi(u) on the periodic grid of the cell.
  std::array<std::size_t, 3> dims{1, 1, 1};
  for (int a = 0; a < n; ++a) dims[a] = P;
  std::vector<std::complex<double>> data(dims[0] * dims[1] * dims[2]);
  for (std::size_t k2 = 0; k2 < dims[2]; ++k2) {
    for (std::size_t k1 = 0; k1 < dims[1]; ++k1) {
      for (std::size_t k0 = 0; k0 < dims[0]; ++k0) {
        const std::size_t kk[3] = {k0, k1, k2};
        double r2 = 0.0;
        double d2 = 0.0;
        for (int a = 0; a < n; ++a) {
          const double u = z0[a] - 0.5 * L + static_cast<double>(kk[a]) * L / static_cast<double>(P);
          r2 += u * u;
          d2 += (u - z0[a]) * (u - z0[a]);
        }
        const double psi = smooth_step((std::sqrt(d2) - 2.0) / (outer - 2.0));
        data[k0 + dims[0] * (k1 + dims[1] * k2)] = std::pow(std::sqrt(r2), n - gamma) * psi;
      }
    }
  }

  // Separable DFT, one axis at a time.
  for (int a = 0; a < n; ++a) {
    std::vector<std::complex<double>> tw(K * P);
    for (std::size_t mi = 0; mi < K; ++mi) {
      const double m = static_cast<double>(mi) - M;
      for (std::size_t k = 0; k < P; ++k) {
        const double u = z0[a] - 0.5 * L + static_cast<double>(k) * L / static_cast<double>(P);
        tw[mi * P + k] = std::polar(1.0 / static_cast<double>(P), -2.0 * std::numbers::pi * m * u / L);
      }
    }
    std::array<std::size_t, 3> nd = dims;
    nd[a] = K;
    std::vector<std::complex<double>> next(nd[0] * nd[1] * nd[2]);
    const std::size_t stride_in = a == 0 ? 1 : (a == 1 ? dims[0] : dims[0] * dims[1]);
    for (std::size_t i2 = 0; i2 < nd[2]; ++i2) {
      for (std::size_t i1 = 0; i1 < nd[1]; ++i1) {
        for (std::size_t i0 = 0; i0 < nd[0]; ++i0) {
          const std::size_t ii[3] = {i0, i1, i2};
          const std::size_t mi = ii[a];
          std::size_t base_in = 0;
          {
            std::size_t idx[3] = {i0, i1, i2};
            idx[a] = 0;
            base_in = idx[0] + dims[0] * (idx[1] + dims[1] * idx[2]);
          }
          std::complex<double> acc = 0.0;
          for (std::size_t k = 0; k < P; ++k) acc += tw[mi * P + k] * data[base_in + k * stride_in];
          next[i0 + nd[0] * (i1 + nd[1] * i2)] = acc;
        }
      }
    }
    data = std::move(next);
    dims = nd;
  }
  return data;
}

namespace {

// sum of |a_m| over |m|_inf <= k for k = 0..M, from coefficients on [-M, M]^n.
std::vector<double> shell_partial_sums(const std::vector<std::complex<double>>& a, int n, int M) {
  const std::size_t K = static_cast<std::size_t>(2 * M + 1);
  std::vector<double> shell(static_cast<std::size_t>(M) + 1, 0.0);
  const std::size_t K1 = n > 1 ? K : 1;
  const std::size_t K2 = n > 2 ? K : 1;
  for (std::size_t i2 = 0; i2 < K2; ++i2) {
    for (std::size_t i1 = 0; i1 < K1; ++i1) {
      for (std::size_t i0 = 0; i0 < K; ++i0) {
        int linf = std::abs(static_cast<int>(i0) - M);
        if (n > 1) linf = std::max(linf, std::abs(static_cast<int>(i1) - M));
        if (n > 2) linf = std::max(linf, std::abs(static_cast<int>(i2) - M));
        shell[static_cast<std::size_t>(linf)] += std::abs(a[i0 + K * (i1 + K1 * i2)]);
      }
    }
  }
  std::vector<double> partial(shell.size());
  double run = 0.0;
  for (std::size_t k = 0; k < shell.size(); ++k) {
    run += shell[k];
    partial[k] = run;
  }
  return partial;
}

}  // namespace

LowerProbeReport commutator_lower_probe(const GridFunction& b, const ExponentSystem& sys,
                                        const Point& x0, double t, const Point& z0,
                                        const RadiusSweep& sweep,
                                        const LowerProbeOptions& options) {
  require_operator_system(sys);
  if (!sys.validated) throw IndexGateViolation("lower probe needs an admissible system");
  if (b.is_complex()) throw DomainError("commutator symbol must be real");
  const Grid& g = b.grid();
  const int n = g.dim();
  if (n != sys.n) throw DomainError("exponent system dimension differs from grid");
  if (options.cutoff < 1) throw DomainError("Fourier cutoff M must be >= 1");
  if (!is_dyadic(t)) throw DomainError("probe scale t must be a power of two");
  if (std::find(sweep.radii.begin(), sweep.radii.end(), t) == sweep.radii.end()) {
    throw DomainError("probe scale t must belong to the radius sweep");
  }
  require_probe_geometry(n, z0, options.period);

  const int M = options.cutoff;
  const int M_ext = 4 * M;
  const double L = options.period;
  LowerProbeReport rep;

  // Coefficients and the tail allowance.
  const std::vector<std::complex<double>> coeff = kernel_fourier_coefficients(
      n, sys.gamma, z0, M_ext, L, options.quadrature_points);
  rep.partial_sums = shell_partial_sums(coeff, n, M_ext);
  const double s_m = rep.partial_sums[static_cast<std::size_t>(M)];
  const double s_ext = rep.partial_sums.back();
  const double last = s_ext - rep.partial_sums[rep.partial_sums.size() - 2];
  const double prev =
      rep.partial_sums[rep.partial_sums.size() - 2] - rep.partial_sums[rep.partial_sums.size() - 3];
  double remainder = 0.0;
  if (last > 0.0) {
    const double q = prev > 0.0 ? last / prev : 1.0;
    // Geometric extrapolation of the shells beyond M_ext; a non-decaying
    // sequence gets a pessimistic allowance of M_ext more shells.
    remainder = q < 1.0 ? last * q / (1.0 - q) : last * M_ext;
  }
  rep.tail = (s_ext - s_m + remainder) / s_m;
  rep.partial_sums_converge = last <= 1e-3 * s_ext;
  if (rep.tail > options.max_tail) {
    throw DomainError("Fourier cutoff M too small: tail allowance exceeds " +
                      std::to_string(options.max_tail));
  }

  // Balls and the oscillation.
  Point xz{};
  for (int a = 0; a < n; ++a) xz[a] = x0[a] + z0[a] * t;
  const WindowSpec B = WindowSpec::ball(x0, t);
  const WindowSpec Bz = WindowSpec::ball(xz, t);
  const GridFunction chiB = window_mask(B, g);
  const GridFunction chiBz = window_mask(Bz, g);
  const double meanz = ball_mean(b, Bz);
  double count_b = 0.0;
  double count_z = 0.0;
  detail::Compensated osc;
  std::vector<double> sign(g.size(), 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    count_z += chiBz.real(i);
    if (chiB.real(i) == 0.0) continue;
    count_b += 1.0;
    const double d = b.real(i) - meanz;
    osc.add(std::abs(d));
    sign[i] = d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0);
  }
  if (count_b == 0.0 || count_z == 0.0) throw DomainError("probe balls contain no midpoint");
  rep.oscillation = osc.value() / count_b;

  // Chain bound with the measured coefficients up to M.
  const double vol = g.cell_volume();
  const double prefactor = std::pow(t, n - sys.gamma) /
                           (count_b * vol * count_z * vol * riesz_constant(sys.gamma, n));
  const ExponentSystem tsys = target_system(sys);
  const std::size_t Kext = static_cast<std::size_t>(2 * M_ext + 1);
  const std::size_t K1 = n > 1 ? Kext : 1;
  detail::Compensated bound;
  const int m1max = n > 1 ? M : 0;
  const int m2max = n > 2 ? M : 0;
  for (int m2 = -m2max; m2 <= m2max; ++m2) {
    for (int m1 = -m1max; m1 <= m1max; ++m1) {
      for (int m0 = -M; m0 <= M; ++m0) {
        const int mm[3] = {m0, m1, m2};
        // Unused axes have a single coefficient slot.
        const std::size_t i1 = n > 1 ? static_cast<std::size_t>(m1 + M_ext) : 0;
        const std::size_t i2 = n > 2 ? static_cast<std::size_t>(m2 + M_ext) : 0;
        const std::size_t ci = static_cast<std::size_t>(m0 + M_ext) + Kext * (i1 + K1 * i2);
        const double am = std::abs(coeff[ci]);
        if (am == 0.0) continue;
        // e_m(y) = exp(2 pi i m.y / (t L)) on B_z0; s conj(e_m) on B.
        std::vector<double> er(g.size(), 0.0);
        std::vector<double> ei(g.size(), 0.0);
        std::vector<double> sr(g.size(), 0.0);
        std::vector<double> si(g.size(), 0.0);
        for (std::size_t i = 0; i < g.size(); ++i) {
          if (chiBz.real(i) == 0.0 && chiB.real(i) == 0.0) continue;
          const Point x = g.midpoint(i);
          double phase = 0.0;
          for (int a = 0; a < n; ++a) phase += mm[a] * x[a];
          phase *= 2.0 * std::numbers::pi / (t * L);
          if (chiBz.real(i) != 0.0) {
            er[i] = std::cos(phase);
            ei[i] = std::sin(phase);
          }
          if (chiB.real(i) != 0.0) {
            sr[i] = sign[i] * std::cos(phase);
            si[i] = -sign[i] * std::sin(phase);
          }
        }
        const GridFunction em(g, std::move(er), std::move(ei));
        const GridFunction sm(g, std::move(sr), std::move(si));
        const double cnorm =
            discrete_alpha_norm(commutator(b, em, sys.gamma), tsys, sweep).value;
        if (cnorm == 0.0) continue;
        // Single block: s conj(e_m) chi_B = c St_t(f), f = delta_t(.) / c'.
        const GridFunction unit = dilate(sm, t);
        const double unorm = discrete_amalgam_norm(unit, tsys.p_conj, tsys.s_conj, 1.0);
        if (unorm == 0.0) continue;
        const double c = std::pow(t, n * tsys.alpha_conj.inverse()) * unorm;
        bound.add(am * cnorm * c);
      }
    }
  }
  rep.operator_bound = prefactor * bound.value();
  rep.pass = rep.oscillation <= rep.operator_bound * (1.0 + rep.tail);
  return rep;
}

}  // namespace amalgam
