#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's reduction code: norms are recomputed with plain loops in long
// double, constants with std::tgamma, and randomness comes from SplitMix64.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "amalgam/grid.hpp"
#include "amalgam/norms.hpp"

namespace oracle {

// SplitMix64, separate from the library's generator.
class Gen {
public:
  explicit Gen(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  int integer(int lo, int hi) { return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }

private:
  std::uint64_t state_;
};

// Random Gaussian bumps plus an optional box, independent of the library family.
inline amalgam::GridFunction bumps(const amalgam::Grid& g, Gen& gen, double spread = 1.0) {
  const int n = g.dim();
  const int count = gen.integer(1, 4);
  std::vector<double> v(g.size(), 0.0);
  for (int k = 0; k < count; ++k) {
    double c[3] = {0, 0, 0};
    for (int a = 0; a < n; ++a) c[a] = gen.uniform(-spread, spread);
    const double sigma = gen.uniform(0.15, 0.5) * spread;
    const double amp = gen.uniform(-1.0, 1.0);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const amalgam::Point x = g.midpoint(i);
      double d2 = 0.0;
      for (int a = 0; a < n; ++a) d2 += (x[a] - c[a]) * (x[a] - c[a]);
      v[i] += amp * std::exp(-d2 / (2.0 * sigma * sigma));
    }
  }
  if (gen.uniform() < 0.5) {
    const double lo = gen.uniform(-spread, 0.0);
    const double hi = lo + gen.uniform(0.2, spread);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const amalgam::Point x = g.midpoint(i);
      bool in = true;
      for (int a = 0; a < n; ++a) in = in && lo <= x[a] && x[a] < hi;
      if (in) v[i] += 0.5;
    }
  }
  // Clip the Gaussian tails so supports are compact for the margin checks.
  for (double& x : v) {
    if (std::abs(x) < 1e-13) x = 0.0;
  }
  return amalgam::GridFunction(g, v);
}

inline long double lp_reduce(const std::vector<long double>& xs, double p, long double h) {
  if (std::isinf(p)) {
    long double m = 0.0L;
    for (long double x : xs) m = std::max(m, x);
    return m;
  }
  long double s = 0.0L;
  for (long double x : xs) s += std::pow(x, static_cast<long double>(p)) * h;
  return std::pow(s, 1.0L / static_cast<long double>(p));
}

// Iterated norm of |f| masked by keep(i), axis 0 first. Dimensions 1 and 2.
template <class Keep>
long double mixed_norm(const amalgam::GridFunction& f, const std::vector<double>& p, Keep keep) {
  const amalgam::Grid& g = f.grid();
  if (g.dim() == 1) {
    std::vector<long double> xs;
    for (std::size_t i = 0; i < g.size(); ++i) xs.push_back(keep(i) ? f.abs(i) : 0.0L);
    return lp_reduce(xs, p[0], g.spacing(0));
  }
  std::vector<long double> rows;
  for (std::size_t j = 0; j < g.count(1); ++j) {
    std::vector<long double> xs;
    for (std::size_t i = 0; i < g.count(0); ++i) {
      const std::size_t k = g.flat({i, j, 0});
      xs.push_back(keep(k) ? f.abs(k) : 0.0L);
    }
    rows.push_back(lp_reduce(xs, p[0], g.spacing(0)));
  }
  return lp_reduce(rows, p[1], g.spacing(1));
}

inline long double mixed_norm(const amalgam::GridFunction& f, const std::vector<double>& p) {
  return mixed_norm(f, p, [](std::size_t) { return true; });
}

inline bool in_ball(const amalgam::Grid& g, std::size_t i, const amalgam::Point& c, double r) {
  const amalgam::Point x = g.midpoint(i);
  long double d2 = 0.0L;
  for (int a = 0; a < g.dim(); ++a) d2 += static_cast<long double>(x[a] - c[a]) * (x[a] - c[a]);
  return d2 < static_cast<long double>(r) * r;
}

// || || f chi_B(y, rho) ||_p ||_s by brute force over every center.
inline long double global_norm(const amalgam::GridFunction& f, const std::vector<double>& p,
                               const std::vector<double>& s, double rho) {
  const amalgam::Grid& g = f.grid();
  std::vector<double> inner(g.size());
  for (std::size_t y = 0; y < g.size(); ++y) {
    const amalgam::Point c = g.midpoint(y);
    inner[y] = static_cast<double>(mixed_norm(f, p, [&](std::size_t i) { return in_ball(g, i, c, rho); }));
  }
  return mixed_norm(amalgam::GridFunction(g, inner), s);
}

inline double ball_volume(int n) {
  return std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
}

// C_gamma from the gamma function directly.
inline double riesz(double gamma, int n) {
  return std::tgamma((n - gamma) / 2.0) /
         (std::pow(std::numbers::pi, n / 2.0) * std::pow(2.0, gamma) * std::tgamma(gamma / 2.0));
}

// C_gamma int_{-1}^{1} |x - y|^{gamma - 1} dy
inline double igamma_indicator(double gamma, double x) {
  const double a = std::abs(x + 1.0);
  const double b = std::abs(x - 1.0);
  const double v = std::abs(x) < 1.0 ? std::pow(a, gamma) + std::pow(b, gamma)
                                      : std::abs(std::pow(a, gamma) - std::pow(b, gamma));
  return riesz(gamma, 1) * v / gamma;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace oracle
