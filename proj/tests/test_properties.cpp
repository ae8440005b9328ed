// Seeded property checks across modules. Each case draws its inputs from
// oracle::Gen so failures replay from the printed seed.

#include <cmath>
#include <vector>

#include "amalgam/amalgam.hpp"
#include "amalgam/bmo.hpp"
#include "amalgam/grid.hpp"
#include "amalgam/norms.hpp"
#include "amalgam/operators.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace amalgam;

namespace {

Exponent random_exponent(oracle::Gen& gen) {
  if (gen.uniform() < 0.1) return kInf;
  return 1.0 + gen.uniform(0.0, 7.0);
}

Exponents random_exponents(oracle::Gen& gen, int n) {
  Exponents out;
  for (int a = 0; a < n; ++a) out.push_back(random_exponent(gen));
  return out;
}

Grid random_grid(oracle::Gen& gen, int n) {
  std::vector<Interval> b;
  std::vector<long long> c;
  for (int a = 0; a < n; ++a) {
    const double half = std::ldexp(1.0, gen.integer(1, 2));
    b.push_back({-half, half});
    c.push_back(static_cast<long long>(n == 1 ? 64 * gen.integer(1, 4) : 16 * gen.integer(1, 3)));
  }
  return make_grid(b, c);
}

}  // namespace

TEST_CASE("conjugation is an involution") {
  oracle::Gen gen(101);
  for (int trial = 0; trial < 500; ++trial) {
    const Exponent p = random_exponent(gen);
    CAPTURE(p.value());
    CHECK(conjugate(conjugate(p)) == p);
    CHECK(p.inverse() + conjugate(p).inverse() == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("restriction is idempotent and masks are indicators") {
  oracle::Gen gen(102);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = gen.integer(1, 2);
    const Grid g = random_grid(gen, n);
    const GridFunction f = oracle::bumps(g, gen);
    const WindowSpec w = gen.uniform() < 0.5
                             ? WindowSpec::ball({gen.uniform(-1, 1), gen.uniform(-1, 1), 0.0}, gen.uniform(0.1, 2.0))
                             : WindowSpec::cube(0.5, {gen.integer(-2, 1), gen.integer(-2, 1), 0});
    const GridFunction once = restrict_to(f, w);
    CHECK(restrict_to(once, w).real() == once.real());
    const GridFunction m = window_mask(w, g);
    for (std::size_t i = 0; i < g.size(); ++i) {
      CHECK((m.real(i) == 0.0 || m.real(i) == 1.0));
      CHECK(once.real(i) == f.real(i) * m.real(i));
    }
  }
}

TEST_CASE("sampling is deterministic") {
  oracle::Gen gen(103);
  for (int trial = 0; trial < 20; ++trial) {
    const Grid g = random_grid(gen, gen.integer(1, 2));
    const FieldSpec spec = random_bump_sum(static_cast<std::uint64_t>(gen.next() >> 1));
    CHECK(sample(spec, g).real() == sample(spec, g).real());
  }
}

TEST_CASE("mixed Lebesgue norms are norms") {
  oracle::Gen gen(104);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = gen.integer(1, 2);
    const Grid g = random_grid(gen, n);
    const Exponents p = random_exponents(gen, n);
    const GridFunction f = oracle::bumps(g, gen);
    const GridFunction h = oracle::bumps(g, gen);
    const double c = gen.uniform(-5.0, 5.0);
    const double nf = mixed_lebesgue_norm(f, p);
    CHECK(mixed_lebesgue_norm(c * f, p) == doctest::Approx(std::abs(c) * nf).epsilon(1e-12));
    CHECK(mixed_lebesgue_norm(f + h, p) <= (nf + mixed_lebesgue_norm(h, p)) * (1 + 1e-12));
    CHECK(mixed_lebesgue_norm(f, p) == doctest::Approx(static_cast<double>(oracle::mixed_norm(f, values(p))))
                                           .epsilon(1e-12));
  }
}

TEST_CASE("discrete amalgam norms are norms") {
  oracle::Gen gen(105);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = gen.integer(1, 2);
    const Grid g = random_grid(gen, n);
    const Exponents p = random_exponents(gen, n);
    const Exponents s = random_exponents(gen, n);
    const double r = std::ldexp(1.0, gen.integer(-1, 1));
    if (!tiles(g, r)) continue;
    const GridFunction f = oracle::bumps(g, gen);
    const GridFunction h = oracle::bumps(g, gen);
    const double c = gen.uniform(-5.0, 5.0);
    const double nf = discrete_amalgam_norm(f, p, s, r);
    CHECK(discrete_amalgam_norm(c * f, p, s, r) == doctest::Approx(std::abs(c) * nf).epsilon(1e-12));
    CHECK(discrete_amalgam_norm(f + h, p, s, r) <= (nf + discrete_amalgam_norm(h, p, s, r)) * (1 + 1e-12));
    CHECK(discrete_amalgam_norm(abs(f), p, s, r) == doctest::Approx(nf).epsilon(1e-14));
  }
}

TEST_CASE("global amalgam norms are norms") {
  oracle::Gen gen(106);
  for (int trial = 0; trial < 20; ++trial) {
    // wide enough that the bump tails are clipped before the window margin
    const Grid g = make_grid({{-8, 8}}, {512});
    const Exponents p = random_exponents(gen, 1);
    const Exponents s = random_exponents(gen, 1);
    const double rho = gen.uniform(0.2, 1.0);
    const GridFunction f = oracle::bumps(g, gen);
    const GridFunction h = oracle::bumps(g, gen);
    const double c = gen.uniform(-5.0, 5.0);
    const double nf = global_amalgam_norm(f, p, s, rho);
    CHECK(global_amalgam_norm(c * f, p, s, rho) == doctest::Approx(std::abs(c) * nf).epsilon(1e-12));
    CHECK(global_amalgam_norm(f + h, p, s, rho) <= (nf + global_amalgam_norm(h, p, s, rho)) * (1 + 1e-12));
  }
}

TEST_CASE("alpha norms grow with the sweep") {
  oracle::Gen gen(107);
  for (int trial = 0; trial < 30; ++trial) {
    const Grid g = make_grid({{-8, 8}}, {256});
    const double p = gen.uniform(1.0, 4.0);
    const double s = p + gen.uniform(0.5, 8.0);
    const double alpha = 1.0 / gen.uniform(1.0 / s, 1.0 / p);
    const ExponentSystem sys = validate_exponents({p}, {s}, alpha, 1);
    const GridFunction f = oracle::bumps(g, gen);
    const int lo = gen.integer(-3, 0);
    const int hi = gen.integer(lo, 2);
    const double small = discrete_alpha_norm(f, sys, RadiusSweep::dyadic(lo, hi)).value;
    const double large = discrete_alpha_norm(f, sys, RadiusSweep::dyadic(lo - 1, hi + 1)).value;
    CHECK(small <= large);
    CHECK(small == discrete_alpha_norm(f, sys, RadiusSweep::dyadic(lo, hi)).value);
  }
}

TEST_CASE("BMO is invariant under constants and scales with the function") {
  oracle::Gen gen(108);
  const Grid g = make_grid({{-4, 4}}, {256});
  const BallFamily fam = BallFamily::default_for(g);
  for (int trial = 0; trial < 30; ++trial) {
    const GridFunction b = oracle::bumps(g, gen);
    const double shift = gen.uniform(-10.0, 10.0);
    const double scale = gen.uniform(-3.0, 3.0);
    const double v = bmo_norm(b, fam);
    CHECK(bmo_norm(b + sample(constant_field(shift), g), fam) == doctest::Approx(v).epsilon(1e-11));
    CHECK(bmo_norm(scale * b, fam) == doctest::Approx(std::abs(scale) * v).epsilon(1e-12));
  }
}

TEST_CASE("fractional integrals are linear") {
  oracle::Gen gen(109);
  const Grid g = make_grid({{-4, 4}}, {256});
  for (int trial = 0; trial < 10; ++trial) {
    const double gamma = gen.uniform(0.1, 0.9);
    const GridFunction f = oracle::bumps(g, gen);
    const GridFunction h = oracle::bumps(g, gen);
    const double c = gen.uniform(-2.0, 2.0);
    const GridFunction lhs = fractional_integral(f + c * h, gamma);
    const GridFunction rhs = fractional_integral(f, gamma) + c * fractional_integral(h, gamma);
    const double scale = fractional_integral(abs(f) + std::abs(c) * abs(h), gamma).max_abs();
    CHECK((lhs - rhs).max_abs() <= 1e-12 * scale);
  }
}
