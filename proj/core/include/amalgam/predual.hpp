#pragma once

// Block decompositions f = sum_j c_j St_{r_j}^(alpha') f_j, the upper bound
// sum |c_j| for the block-space norm, the L^1 pairing and the duality check.

#include <complex>
#include <string>
#include <vector>

#include "amalgam/amalgam.hpp"
#include "amalgam/grid.hpp"
#include "amalgam/norms.hpp"

namespace amalgam {

struct Block {
  std::complex<double> c;
  double r = 1.0;
  GridFunction f;
};

class BlockDecomposition {
public:
  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  const ExponentSystem& system() const noexcept { return sys_; }
  // Discrete (p', s') norm at unit scale of each f_j, as validated.
  const std::vector<double>& block_norms() const noexcept { return norms_; }
  double coefficient_sum() const noexcept { return coefficient_sum_; }

private:
  friend BlockDecomposition make_block_decomposition(std::vector<Block>, const ExponentSystem&);
  std::vector<Block> blocks_;
  ExponentSystem sys_;
  std::vector<double> norms_;
  double coefficient_sum_ = 0.0;
};

inline constexpr double kBlockNormSlack = 1e-12;

// Validates ||f_j||_{p',s'} <= 1 + 1e-12 at unit scale. Throws
// EmptyDecomposition or BlockNormExceeded(j).
BlockDecomposition make_block_decomposition(std::vector<Block> blocks, const ExponentSystem& sys);

// sum_j c_j St_{r_j}^(alpha') f_j resampled onto grid. Each dilated block grid
// must be the target grid or an aligned coarsening of it.
GridFunction synthesize(const BlockDecomposition& dec, const Grid& grid);

double h_norm_upper_bound(const BlockDecomposition& dec);

// Midpoint rule for int f g (no conjugation).
std::complex<double> pairing(const GridFunction& f, const GridFunction& g);

struct DualityReport {
  double lhs = 0.0;      // |int synth(dec) g|
  double g_norm = 0.0;   // discrete alpha norm of g
  double h_bound = 0.0;  // sum |c_j|
  double rhs = 0.0;
  bool pass = false;
};

inline constexpr double kDualitySlack = 1e-9;

DualityReport duality_check(const GridFunction& g, const BlockDecomposition& dec,
                            const ExponentSystem& sys, const RadiusSweep& sweep);

struct CharacteristicBound {
  double r0 = 0.0;
  double alpha_norm = 0.0;   // ||chi_B(0,r0)||_(p,s)^alpha
  double alpha_ratio = 0.0;  // alpha_norm / r0^{n/alpha}
  double h_bound = 0.0;      // single block bound r0^{n/alpha'} ||chi_B(0,1)||_{p',s'}
  double h_ratio = 0.0;      // h_bound / r0^{n/alpha'}
  double synthesis_error = 0.0;  // max |synth - chi_B(0,r0)| of the single block
};

// Balls are sampled on grid; the sweep must leave a window margin in the box.
std::vector<CharacteristicBound> characteristic_norm_bounds(const std::vector<double>& r0_list,
                                                            const ExponentSystem& sys,
                                                            const RadiusSweep& sweep,
                                                            const Grid& grid);

// {"alpha_prime": a, "blocks": [{"c": x or [re, im], "r": r, "field": {...}}]}
// Each field is sampled on grid scaled by 1/r so the dilated block lands on grid.
BlockDecomposition decomposition_from_json(const std::string& text, const ExponentSystem& sys,
                                           const Grid& grid);

}  // namespace amalgam
