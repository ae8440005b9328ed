#pragma once

// Internal reduction kernels shared by the norm engines.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include "amalgam/errors.hpp"
#include "amalgam/grid.hpp"
#include "amalgam/norms.hpp"

namespace amalgam::detail {

// Neumaier's variant of compensated summation. Adding an exact zero leaves
// both the sum and the correction unchanged.
struct Compensated {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + carry; }
};

inline double raise(double v, const Exponent& p) {
  const double inv = p.inverse();
  if (inv == 1.0) return v;
  if (inv == 0.5) return v * v;
  return std::pow(v, p.value());
}

inline double root(double x, const Exponent& p) {
  const double inv = p.inverse();
  if (inv == 1.0) return x;
  if (inv == 0.5) return std::sqrt(x);
  return std::pow(x, inv);
}

// One axis of an iterated norm: (sum v^p * w)^{1/p}, or max v for p = inf.
// Finite p accumulates (v / m)^p against the running maximum m, so large
// exponents neither underflow nor overflow.
class AxisReducer {
public:
  AxisReducer(const Exponent& p, double weight) : p_(p), w_(weight) {}

  void add(double v) {
    if (p_.is_infinite()) {
      mx_ = std::max(mx_, v);
      return;
    }
    if (v == 0.0) return;
    if (mx_ == 0.0) {
      mx_ = v;
      acc_.add(1.0);
    } else if (v > mx_) {
      const double shrink = raise(mx_ / v, p_);
      acc_.sum *= shrink;
      acc_.carry *= shrink;
      mx_ = v;
      acc_.add(1.0);
    } else {
      acc_.add(raise(v / mx_, p_));
    }
  }
  // v already raised to the power p (finite p only, never mixed with add).
  void add_raised(double vp) {
    mx_ = 1.0;
    acc_.add(vp);
  }

  double result() const {
    if (p_.is_infinite() || mx_ == 0.0) return mx_;
    return mx_ * root(acc_.value() * w_, p_);
  }

private:
  Exponent p_;
  double w_;
  Compensated acc_;
  double mx_ = 0.0;
};

// Iterated norm over the index box [lo, hi). value(i0, i1, i2) returns a
// nonnegative number; when raised is true it returns that number already
// raised to p[0] (p[0] finite). Missing axes reduce by a max over one entry,
// which is an exact identity.
template <class Value>
double reduce_box(int dim, const Index& lo, const Index& hi, const Exponents& p,
                  const double* weight, Value&& value, bool raised = false) {
  const Exponent inf = Exponent(kInf);
  const Exponent e0 = p[0];
  const Exponent e1 = dim > 1 ? p[1] : inf;
  const Exponent e2 = dim > 2 ? p[2] : inf;
  const double w0 = weight[0];
  const double w1 = dim > 1 ? weight[1] : 1.0;
  const double w2 = dim > 2 ? weight[2] : 1.0;
  const std::size_t hi1 = dim > 1 ? hi[1] : lo[1] + 1;
  const std::size_t hi2 = dim > 2 ? hi[2] : lo[2] + 1;
  if (hi[0] <= lo[0] || hi1 <= lo[1] || hi2 <= lo[2]) return 0.0;

  AxisReducer r2(e2, w2);
  for (std::size_t i2 = lo[2]; i2 < hi2; ++i2) {
    AxisReducer r1(e1, w1);
    for (std::size_t i1 = lo[1]; i1 < hi1; ++i1) {
      AxisReducer r0(e0, w0);
      if (raised) {
        for (std::size_t i0 = lo[0]; i0 < hi[0]; ++i0) r0.add_raised(value(i0, i1, i2));
      } else {
        for (std::size_t i0 = lo[0]; i0 < hi[0]; ++i0) r0.add(value(i0, i1, i2));
      }
      r1.add(r0.result());
    }
    r2.add(r1.result());
  }
  return r2.result();
}

inline void require_exponents(const Exponents& p, int dim) {
  if (static_cast<int>(p.size()) != dim) {
    throw DomainError("exponent vector has length " + std::to_string(p.size()) +
                      ", grid dimension is " + std::to_string(dim));
  }
}

}  // namespace amalgam::detail
