#pragma once

// Exponents, iterated mixed Lebesgue norms, mixed sequence norms and the
// windowed Hoelder product bound.

#include <limits>
#include <vector>

#include "amalgam/grid.hpp"

namespace amalgam {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// An exponent in [1, inf]. Stored as the pair (1/p, 1 - 1/p) so that
// conjugation is a swap and therefore exactly involutive; inf is 1/p == 0.
class Exponent {
public:
  Exponent(double p = 1.0);  // NOLINT(google-explicit-constructor): exponents read like numbers

  double value() const noexcept { return inv_ == 0.0 ? kInf : 1.0 / inv_; }
  double inverse() const noexcept { return inv_; }
  bool is_infinite() const noexcept { return inv_ == 0.0; }
  Exponent conjugate() const noexcept { return Exponent(cinv_, inv_, Tag{}); }

  bool operator==(const Exponent& o) const noexcept { return inv_ == o.inv_ && cinv_ == o.cinv_; }
  bool operator!=(const Exponent& o) const noexcept { return !(*this == o); }

private:
  struct Tag {};
  Exponent(double inv, double cinv, Tag) noexcept : inv_(inv), cinv_(cinv) {}
  double inv_;
  double cinv_;
};

using Exponents = std::vector<Exponent>;

Exponent conjugate(Exponent p);
Exponents conjugate(const Exponents& p);
Exponents uniform_exponents(int n, Exponent p);
// (1/n) * sum 1/p_i
double harmonic_mean_inverse(const Exponents& p);
// sum 1/p_i
double sum_inverse(const Exponents& p);
std::vector<double> values(const Exponents& p);

// All index symbols of one experiment. Built by validate_exponents (amalgam.hpp),
// which fills the gate flags and conjugates.
struct ExponentSystem {
  int n = 1;
  Exponents p;
  Exponents s;
  Exponent alpha;
  // Target side of operator estimates (q, beta); equal to (p, alpha) unless set.
  Exponents q;
  Exponent beta;
  double gamma = 0.0;

  Exponents p_conj;
  Exponents s_conj;
  Exponent alpha_conj;

  bool validated = false;
  bool forced = false;    // gate bypassed on request; results are diagnostic only
  bool boundary = false;  // one of the gate inequalities holds with equality

  double hm_p() const { return harmonic_mean_inverse(p); }
  double hm_s() const { return harmonic_mean_inverse(s); }
};

// Finite array over a box of lattice indices, zero elsewhere. Entries are
// finite and nonnegative.
class LatticeArray {
public:
  LatticeArray(int dim, const LatticeIndex& lower, const Index& extent);

  int dim() const noexcept { return dim_; }
  const LatticeIndex& lower() const noexcept { return lo_; }
  const Index& extent() const noexcept { return ext_; }
  const std::vector<double>& values() const noexcept { return v_; }

  void set(const LatticeIndex& k, double value);
  double at(const LatticeIndex& k) const;

private:
  bool inside(const LatticeIndex& k, std::size_t& flat) const;
  int dim_;
  LatticeIndex lo_;
  Index ext_;
  std::vector<double> v_;
};

// Build from sparse entries; the box is the bounding box of the keys.
LatticeArray lattice_from_entries(int dim,
                                  const std::vector<std::pair<LatticeIndex, double>>& entries);

// Iterated norm: axis 0 first with midpoint sums weighted by the spacing,
// then axis 1, then axis 2. Infinite exponents reduce by max.
double mixed_lebesgue_norm(const GridFunction& f, const Exponents& p);

// Iterated sequence norm, innermost index k_1 first.
double mixed_sequence_norm(const LatticeArray& a, const Exponents& s);

// Midpoint rule for the integral of |f g|.
double integral_abs_product(const GridFunction& f, const GridFunction& g);

struct HolderReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

// int |fg| against r||f||_{p,s} * r||g||_{p',s'} (cube lattice of side r).
HolderReport windowed_holder_bound(const GridFunction& f, const GridFunction& g,
                                   const Exponents& p, const Exponents& s, double r);

}  // namespace amalgam
