#include "amalgam/norms.hpp"

#include <algorithm>
#include <cmath>

#include "amalgam/amalgam.hpp"
#include "amalgam/errors.hpp"
#include "reduce.hpp"

namespace amalgam {

// ============================================================================
// Exponents

Exponent::Exponent(double p) {
  if (std::isnan(p) || p < 1.0) throw DomainError("exponent outside [1, inf]");
  if (std::isinf(p)) {
    inv_ = 0.0;
    cinv_ = 1.0;
  } else {
    inv_ = 1.0 / p;
    cinv_ = 1.0 - inv_;
  }
}

Exponent conjugate(Exponent p) { return p.conjugate(); }

Exponents conjugate(const Exponents& p) {
  Exponents out;
  out.reserve(p.size());
  for (const Exponent& e : p) out.push_back(e.conjugate());
  return out;
}

Exponents uniform_exponents(int n, Exponent p) { return Exponents(static_cast<std::size_t>(n), p); }

double sum_inverse(const Exponents& p) {
  double s = 0.0;
  for (const Exponent& e : p) s += e.inverse();
  return s;
}

double harmonic_mean_inverse(const Exponents& p) {
  if (p.empty()) throw DomainError("empty exponent vector");
  return sum_inverse(p) / static_cast<double>(p.size());
}

std::vector<double> values(const Exponents& p) {
  std::vector<double> v;
  v.reserve(p.size());
  for (const Exponent& e : p) v.push_back(e.value());
  return v;
}

// ============================================================================
// LatticeArray

LatticeArray::LatticeArray(int dim, const LatticeIndex& lower, const Index& extent)
    : dim_(dim), lo_(lower), ext_(extent) {
  if (dim < 1 || dim > kMaxDim) throw DomainError("lattice dimension must be 1, 2 or 3");
  std::size_t total = 1;
  for (int a = 0; a < kMaxDim; ++a) {
    if (a >= dim) {
      lo_[a] = 0;
      ext_[a] = 1;
    }
    total *= ext_[a];
  }
  v_.assign(total, 0.0);
}

bool LatticeArray::inside(const LatticeIndex& k, std::size_t& flat) const {
  flat = 0;
  std::size_t stride = 1;
  for (int a = 0; a < kMaxDim; ++a) {
    const long long key = a < dim_ ? k[a] : 0;
    const long long off = key - lo_[a];
    if (off < 0 || static_cast<std::size_t>(off) >= ext_[a]) return false;
    flat += static_cast<std::size_t>(off) * stride;
    stride *= ext_[a];
  }
  return true;
}

void LatticeArray::set(const LatticeIndex& k, double value) {
  if (!std::isfinite(value)) throw DomainError("non-finite lattice entry");
  if (value < 0.0) throw DomainError("negative lattice entry");
  std::size_t flat = 0;
  if (!inside(k, flat)) throw DomainError("lattice index outside the array box");
  v_[flat] = value;
}

double LatticeArray::at(const LatticeIndex& k) const {
  std::size_t flat = 0;
  return inside(k, flat) ? v_[flat] : 0.0;
}

LatticeArray lattice_from_entries(int dim,
                                  const std::vector<std::pair<LatticeIndex, double>>& entries) {
  if (entries.empty()) return LatticeArray(dim, LatticeIndex{}, Index{1, 1, 1});
  LatticeIndex lo = entries.front().first;
  LatticeIndex hi = lo;
  for (const auto& [k, v] : entries) {
    for (int a = 0; a < dim; ++a) {
      lo[a] = std::min(lo[a], k[a]);
      hi[a] = std::max(hi[a], k[a]);
    }
  }
  Index ext{1, 1, 1};
  for (int a = 0; a < dim; ++a) ext[a] = static_cast<std::size_t>(hi[a] - lo[a] + 1);
  LatticeArray out(dim, lo, ext);
  for (const auto& [k, v] : entries) out.set(k, v);
  return out;
}

// ============================================================================
// Norms

double mixed_lebesgue_norm(const GridFunction& f, const Exponents& p) {
  const Grid& g = f.grid();
  detail::require_exponents(p, g.dim());
  const double h[3] = {g.spacing(0), g.dim() > 1 ? g.spacing(1) : 1.0,
                       g.dim() > 2 ? g.spacing(2) : 1.0};
  const Index lo{0, 0, 0};
  const Index hi = g.counts();
  if (!f.is_complex()) {
    const std::vector<double>& re = f.real();
    return detail::reduce_box(g.dim(), lo, hi, p, h, [&](std::size_t i0, std::size_t i1,
                                                         std::size_t i2) {
      return std::abs(re[g.flat({i0, i1, i2})]);
    });
  }
  return detail::reduce_box(g.dim(), lo, hi, p, h,
                            [&](std::size_t i0, std::size_t i1, std::size_t i2) {
                              return f.abs(g.flat({i0, i1, i2}));
                            });
}

double mixed_sequence_norm(const LatticeArray& a, const Exponents& s) {
  detail::require_exponents(s, a.dim());
  const double ones[3] = {1.0, 1.0, 1.0};
  const Index lo{0, 0, 0};
  const Index& ext = a.extent();
  const std::vector<double>& v = a.values();
  for (double x : v) {
    if (x < 0.0) throw DomainError("negative lattice entry");
  }
  return detail::reduce_box(a.dim(), lo, ext, s, ones,
                            [&](std::size_t i0, std::size_t i1, std::size_t i2) {
                              return v[i0 + ext[0] * (i1 + ext[1] * i2)];
                            });
}

double integral_abs_product(const GridFunction& f, const GridFunction& g) {
  require_same_grid(f, g);
  detail::Compensated acc;
  for (std::size_t i = 0; i < f.size(); ++i) acc.add(f.abs(i) * g.abs(i));
  return acc.value() * f.grid().cell_volume();
}

HolderReport windowed_holder_bound(const GridFunction& f, const GridFunction& g,
                                   const Exponents& p, const Exponents& s, double r) {
  require_same_grid(f, g);
  if (!tiles(f.grid(), r)) throw DomainError("radius does not tile the grid");
  HolderReport rep;
  rep.lhs = integral_abs_product(f, g);
  rep.rhs = discrete_amalgam_norm(f, p, s, r) *
            discrete_amalgam_norm(g, conjugate(p), conjugate(s), r);
  rep.pass = rep.lhs <= rep.rhs * (1.0 + 1e-12);
  return rep;
}

}  // namespace amalgam
