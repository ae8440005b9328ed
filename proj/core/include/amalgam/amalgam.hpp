#pragma once

// Amalgam norms over ball and cube windows, the admissibility gate for
// (p, s, alpha), and the equivalence and embedding measurements.

#include <vector>

#include "amalgam/grid.hpp"
#include "amalgam/norms.hpp"

namespace amalgam {

// Finite stand-in for sup over r > 0.
struct RadiusSweep {
  std::vector<double> radii;
  WindowKind kind = WindowKind::Ball;

  // r = 2^j for j = jmin..jmax.
  static RadiusSweep dyadic(int jmin, int jmax, WindowKind kind = WindowKind::Ball);
  // Copy with r inserted (kept sorted, duplicates dropped).
  RadiusSweep with(double r) const;
  // Copy with every radius multiplied by factor.
  RadiusSweep scaled(double factor) const;
  void validate() const;
};

enum class GateMode { Enforce, Force };

// Accepts iff (1/n) sum 1/s_i <= 1/alpha <= (1/n) sum 1/p_i. Equality is
// accepted and flagged in ExponentSystem::boundary. GateMode::Force returns
// a rejected system marked forced instead of throwing.
ExponentSystem validate_exponents(const Exponents& p, const Exponents& s, Exponent alpha, int n,
                                  GateMode mode = GateMode::Enforce);

// Adds the target side (q, beta, gamma) and runs the gate for (q, s, beta).
ExponentSystem with_target(ExponentSystem sys, const Exponents& q, Exponent beta, double gamma,
                           GateMode mode = GateMode::Enforce);

double unit_ball_volume(int n);
// Radius of the ball of unit volume, v_n^{-1/n}.
double unit_volume_radius(int n);

// True when cubes of side r tile the grid cell by cell: r and the lower
// bounds are integer multiples of the spacing on every axis.
bool tiles(const Grid& grid, double r);

// y -> || f chi_B(y, rho) ||_p at every midpoint y of f's grid.
GridFunction ball_window_norms(const GridFunction& f, const Exponents& p, double rho);

// Throws DomainError when supp f plus a rho neighbourhood leaves the box.
void require_window_margin(const GridFunction& f, double rho);

// || || f chi_B(., rho) ||_p ||_s with centers on f's grid.
double global_amalgam_norm(const GridFunction& f, const Exponents& p, const Exponents& s,
                           double rho);

struct SupResult {
  double value = 0.0;
  double argmax = 0.0;            // smallest maximizing radius
  std::vector<double> terms;      // weighted term per radius of the sweep
};

// sup_r || |B(., r)|^{1/alpha - hm(p) - hm(s)} || f chi_B(., r) ||_p ||_s
SupResult alpha_amalgam_norm(const GridFunction& f, const ExponentSystem& sys,
                             const RadiusSweep& sweep);

// Per-cube norms || f chi_Q(r,k) ||_p over every cube meeting the box.
LatticeArray cube_norms(const GridFunction& f, const Exponents& p, double r);

// r||f||_{p,s} = || { || f chi_Q(r,k) ||_p }_k ||_{l^s}
double discrete_amalgam_norm(const GridFunction& f, const Exponents& p, const Exponents& s,
                             double r);

// sup_r r^{n/alpha - sum 1/p_i} r||f||_{p,s}
SupResult discrete_alpha_norm(const GridFunction& f, const ExponentSystem& sys,
                              const RadiusSweep& sweep);

enum class EquivalenceMode {
  BallVsScaledBall,      // G(f, rho r) / G(f, r)
  CubeVsBall,            // r^{-sum 1/s_i} G(f, r) / r||f||_{p,s}
  ContinuousVsDiscrete,  // ball term / cube term of the two alpha norms, per r
};

struct RatioRange {
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  std::vector<double> ratios;  // one per radius
};

// G(f, r) denotes global_amalgam_norm(f, sys.p, sys.s, r).
RatioRange equivalence_ratio(const GridFunction& f, const ExponentSystem& sys,
                             EquivalenceMode mode, const std::vector<double>& radii,
                             double rho = 2.0);

struct EmbeddingReport {
  double window_radius = 0.0;  // radius of the global norm, v_n^{-1/n}
  double global_norm = 0.0;    // ||f||_(p,s)
  double alpha_p = 0.0;        // ||f||_(p,s)^alpha
  double alpha_q = 0.0;        // ||f||_(q,s)^alpha
  bool global_below_alpha = false;
  bool p_below_q = false;
  bool pass = false;
};

// ||f||_(p,s) <= ||f||_(p,s)^alpha <= ||f||_(q,s)^alpha for p <= q. The
// global norm uses the unit-volume ball, so its weight is exactly one and it
// is literally a term of the alpha sup; that radius is added to the sweep.
EmbeddingReport embedding_check(const GridFunction& f, const Exponents& p, const Exponents& q,
                                const Exponents& s, Exponent alpha, const RadiusSweep& sweep);

}  // namespace amalgam
