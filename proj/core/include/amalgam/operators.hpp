#pragma once

// Riesz potential I_gamma, fractional maximal function, commutators, dyadic
// dilations, and the heat-kernel form of the Riesz kernel.

#include <cstddef>
#include <vector>

#include "amalgam/amalgam.hpp"
#include "amalgam/grid.hpp"
#include "amalgam/norms.hpp"

namespace amalgam {

// C_gamma with 1/C_gamma = pi^{n/2} 2^gamma Gamma(gamma/2) / Gamma((n-gamma)/2).
double riesz_constant(double gamma, int n);

// How the kernel mass of the cells near the diagonal is obtained.
//   1D: every cell weight is the exact integral of |x-y|^{gamma-1} over the cell.
//   2D: the diagonal cell is integrated exactly in polar form, others by midpoint.
//   3D: the diagonal cell uses the inscribed ball only (approximate).
enum class SelfCellRule { ExactCells, PolarCell, InscribedBall };
SelfCellRule self_cell_rule(int n);
bool self_cell_exact(int n);

// Kernel mass int_cell |y|^{gamma-n} dy over the cell centered at the origin.
double self_cell_mass(const Grid& grid, double gamma);

// I_gamma f at every midpoint, O(N^2) direct summation with compensated sums.
GridFunction fractional_integral(const GridFunction& f, double gamma);

enum class MaximalVariant { Uncentered, Centered };

struct MaximalOptions {
  MaximalVariant variant = MaximalVariant::Uncentered;
  std::size_t center_stride = 1;  // uncentered: centers every stride cells
  bool inside_only = false;       // keep only balls contained in the box
};

// max over balls B(c, r) containing x of |B|^{gamma/n - 1} int_B |f|.
GridFunction fractional_maximal(const GridFunction& f, double gamma, const RadiusSweep& sweep,
                                const MaximalOptions& options = {});

// [b, I_gamma] f = b I_gamma f - I_gamma (b f)
GridFunction commutator(const GridFunction& b, const GridFunction& f, double gamma);

// t == 2^k for an integer k.
bool is_dyadic(double t);

// delta_t f(x) = f(t x). The result lives on the grid scaled by 1/t; samples
// are copied, never interpolated.
GridFunction dilate(const GridFunction& f, double t);

// St_r^(alpha) f = r^{-n/alpha} f(./r), on the grid scaled by r.
GridFunction st_dilation(const GridFunction& f, double r, Exponent alpha);

// (1/Gamma(gamma/2)) int_0^inf (4 pi t)^{-n/2} e^{-d^2/4t} t^{gamma/2-1} dt by
// adaptive quadrature; equals C_gamma d^{gamma-n}.
double heat_kernel_reconstruction(double gamma, int n, double d);

struct AnnularReport {
  double max_ratio = 0.0;        // max over x in B of I_gamma|f|(x) / annular sum
  double derived_constant = 0.0; // C_gamma 4^{n-gamma} v_n^{1-gamma/n}
  bool pass = false;
};

// For f vanishing on 2B, B = B(center, r): compares I_gamma|f| on B with
// sum_j |2^{j+1}B|^{gamma/n-1} int_{2^{j+1}B} |f| over j = 1..jmax.
AnnularReport annular_estimate(const GridFunction& f, double gamma, const Point& center, double r,
                               int jmax);

}  // namespace amalgam
