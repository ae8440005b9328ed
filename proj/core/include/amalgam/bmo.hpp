#pragma once

// Mean oscillation, BMO norms over a discrete ball family, the mixed-norm
// variant, and the dyadic doubling drift.

#include <cstddef>
#include <vector>

#include "amalgam/grid.hpp"
#include "amalgam/norms.hpp"

namespace amalgam {

enum class ContainmentPolicy { FullyInside, Clipped };

struct BallFamily {
  std::size_t stride = 4;  // centers every stride cells along each axis
  std::vector<double> radii;
  ContainmentPolicy policy = ContainmentPolicy::FullyInside;

  // Stride 4, radii 2^j from 2h up to a quarter of the shortest box side,
  // fully-inside balls only.
  static BallFamily default_for(const Grid& grid);
};

std::vector<WindowSpec> family_members(const BallFamily& family, const Grid& grid);

// b_B: average of the samples whose midpoints lie in the ball.
double ball_mean(const GridFunction& b, const WindowSpec& ball);

// (1/|B|) int_B |b - b_B| with |B| the mask measure.
double mean_oscillation(const GridFunction& b, const WindowSpec& ball);

double bmo_norm(const GridFunction& b, const BallFamily& family);

// max over the family of || (b - b_B) chi_B ||_p / || chi_B ||_p
double mixed_bmo_norm(const GridFunction& b, const Exponents& p, const BallFamily& family);

struct DriftReport {
  double drift = 0.0;  // |b_{2^{j+1}B} - b_B|
  double bound = 0.0;  // (j+1) 2^n max osc over the chain B, 2B, ..., 2^{j+1}B
  double chain_bmo = 0.0;
  bool pass = false;
};

DriftReport doubling_drift(const GridFunction& b, const WindowSpec& ball, int j);

}  // namespace amalgam
