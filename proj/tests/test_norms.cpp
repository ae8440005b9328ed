#include <array>
#include <cmath>
#include <vector>

#include "amalgam/amalgam.hpp"
#include "amalgam/errors.hpp"
#include "amalgam/norms.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace amalgam;

TEST_CASE("exponent encoding and conjugation") {
  CHECK(Exponent(2).value() == 2.0);
  CHECK(Exponent(kInf).is_infinite());
  CHECK(conjugate(Exponent(1)).is_infinite());
  CHECK(conjugate(Exponent(kInf)).value() == 1.0);
  CHECK(conjugate(Exponent(2)).value() == 2.0);
  CHECK(conjugate(Exponent(4)).value() == doctest::Approx(4.0 / 3.0).epsilon(1e-15));

  const Exponents v = conjugate(Exponents{4.0, 4.0 / 3.0});
  CHECK(v[0].value() == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(v[1].value() == doctest::Approx(4.0).epsilon(1e-15));

  oracle::Gen gen(5);
  for (int i = 0; i < 200; ++i) {
    const Exponent p(gen.uniform(1.0, 50.0));
    CHECK(conjugate(conjugate(p)) == p);
    CHECK(p.inverse() + p.conjugate().inverse() == doctest::Approx(1.0).epsilon(1e-15));
  }

  CHECK_THROWS_WITH_AS(Exponent(0.5), doctest::Contains("exponent outside"), DomainError);
  CHECK_THROWS_AS(Exponent(NAN), DomainError);
  CHECK(harmonic_mean_inverse({2.0, 4.0}) == doctest::Approx(0.375));
  CHECK(sum_inverse({2.0, kInf}) == 0.5);
}

TEST_CASE("mixed Lebesgue norm examples") {
  const Grid g = make_grid({{0, 2}, {0, 3}}, {2, 3});
  const GridFunction one = sample(constant_field(1.0), g);
  CHECK(mixed_lebesgue_norm(one, {1.0, 2.0}) == doctest::Approx(std::sqrt(12.0)).epsilon(1e-15));

  const Grid fine = make_grid({{-1, 2}, {-1, 2}}, {12, 12});
  const GridFunction unit = sample(indicator_box({0.0, 0.0}, {1.0, 1.0}), fine);
  for (double a : {1.0, 1.5, 2.0, 7.0, kInf}) {
    for (double b : {1.0, 3.0, kInf}) CHECK(mixed_lebesgue_norm(unit, {a, b}) == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK(mixed_lebesgue_norm(GridFunction::zeros(fine), {2.0, 3.0}) == 0.0);
}

TEST_CASE("mixed Lebesgue norm against the iterated oracle") {
  oracle::Gen gen(21);
  const Grid g2 = make_grid({{-3, 3}, {-2, 2}}, {48, 40});
  const Grid g1 = make_grid({{-3, 3}}, {300});
  const double choices[] = {1.0, 1.5, 2.0, 3.0, 4.0, kInf};
  for (int trial = 0; trial < 40; ++trial) {
    const bool two = trial % 2 == 0;
    const GridFunction f = oracle::bumps(two ? g2 : g1, gen);
    std::vector<double> p = {choices[gen.integer(0, 5)]};
    if (two) p.push_back(choices[gen.integer(0, 5)]);
    const double want = static_cast<double>(oracle::mixed_norm(f, p));
    CHECK(mixed_lebesgue_norm(f, Exponents(p.begin(), p.end())) == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("mixed sequence norm examples") {
  const LatticeArray two = lattice_from_entries(2, {{{0, 0, 0}, 1.0}, {{1, 0, 0}, 1.0}});
  CHECK(mixed_sequence_norm(two, {2.0, 3.0}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

  for (int m : {1, 3, 7}) {
    std::vector<std::pair<LatticeIndex, double>> row;
    for (int k = 0; k < m; ++k) row.push_back({{k, 4, 0}, 1.0});
    const LatticeArray a = lattice_from_entries(2, row);
    for (double s : {1.0, 2.0, 5.0}) {
      CHECK(mixed_sequence_norm(a, {s, kInf}) == doctest::Approx(std::pow(m, 1.0 / s)).epsilon(1e-14));
    }
  }

  LatticeArray zero(2, {0, 0, 0}, {3, 3, 1});
  CHECK(mixed_sequence_norm(zero, {2.0, 2.0}) == 0.0);
  CHECK(zero.at({10, 10, 0}) == 0.0);
  CHECK_THROWS_WITH_AS(zero.set({0, 0, 0}, -1.0), doctest::Contains("negative"), DomainError);
  CHECK_THROWS_AS(zero.set({5, 0, 0}, 1.0), DomainError);
}

TEST_CASE("mixed sequence norm iterates k_1 first") {
  // rows k2 = 0: (3, 4); k2 = 1: (0, 5). l^2 rows then l^1 gives 5 + 5.
  const LatticeArray a =
      lattice_from_entries(2, {{{0, 0, 0}, 3.0}, {{1, 0, 0}, 4.0}, {{1, 1, 0}, 5.0}});
  CHECK(mixed_sequence_norm(a, {2.0, 1.0}) == doctest::Approx(10.0));
  // columns would give sqrt(9) + sqrt(16 + 25) instead
  CHECK(mixed_sequence_norm(a, {1.0, 2.0}) == doctest::Approx(std::sqrt(49.0 + 25.0)));
}

TEST_CASE("scalar collapse and homogeneity") {
  oracle::Gen gen(33);
  const Grid g = make_grid({{-2, 2}, {-2, 2}}, {40, 40});
  for (int trial = 0; trial < 20; ++trial) {
    const GridFunction f = oracle::bumps(g, gen);
    const double p = gen.uniform(1.0, 6.0);
    long double flat = 0.0L;
    for (std::size_t i = 0; i < f.size(); ++i) flat += std::pow(static_cast<long double>(f.abs(i)), p) * g.cell_volume();
    const double want = static_cast<double>(std::pow(flat, 1.0L / p));
    CHECK(mixed_lebesgue_norm(f, {p, p}) == doctest::Approx(want).epsilon(1e-12));

    const double c = gen.uniform(-5.0, 5.0);
    CHECK(mixed_lebesgue_norm(c * f, {p, 2.0}) ==
          doctest::Approx(std::abs(c) * mixed_lebesgue_norm(f, {p, 2.0})).epsilon(1e-12));
  }
}

TEST_CASE("non-finite samples are rejected at construction") {
  const Grid g = make_grid({{0, 1}}, {2});
  CHECK_THROWS_WITH_AS(GridFunction(g, {1.0, INFINITY}), doctest::Contains("non-finite"), DomainError);
}

TEST_CASE("windowed Hoelder bound examples") {
  const Grid g = make_grid({{-2, 2}}, {64});
  const GridFunction chi = sample(indicator_box({0.0}, {1.0}), g);
  const HolderReport eq = windowed_holder_bound(chi, chi, {2.0}, {2.0}, 1.0);
  CHECK(eq.lhs == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(eq.rhs == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(eq.pass);

  const HolderReport zero = windowed_holder_bound(chi, GridFunction::zeros(g), {2.0}, {2.0}, 1.0);
  CHECK(zero.lhs == 0.0);
  CHECK(zero.pass);

  CHECK_THROWS_WITH_AS(windowed_holder_bound(chi, chi, {2.0}, {2.0}, 0.3),
                       doctest::Contains("tile"), DomainError);
}

TEST_CASE("windowed Hoelder bound over random pairs") {
  oracle::Gen gen(77);
  const Grid g = make_grid({{-4, 4}, {-4, 4}}, {32, 32});
  int violations = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const GridFunction f = oracle::bumps(g, gen, 2.0);
    const GridFunction h = oracle::bumps(g, gen, 2.0);
    const double r = std::array<double, 3>{0.5, 1.0, 2.0}[static_cast<std::size_t>(trial % 3)];
    const HolderReport rep = windowed_holder_bound(f, h, {3.0, 2.0}, {2.0, 4.0}, r);
    // independent lhs
    long double lhs = 0.0L;
    for (std::size_t i = 0; i < f.size(); ++i) lhs += static_cast<long double>(f.abs(i)) * h.abs(i) * g.cell_volume();
    CHECK(rep.lhs == doctest::Approx(static_cast<double>(lhs)).epsilon(1e-12));
    if (!rep.pass) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("triangle inequality and monotonicity") {
  oracle::Gen gen(8);
  const Grid g = make_grid({{-3, 3}, {-3, 3}}, {36, 36});
  for (int trial = 0; trial < 50; ++trial) {
    const GridFunction f = oracle::bumps(g, gen);
    const GridFunction h = oracle::bumps(g, gen);
    const Exponents p = {gen.uniform(1.0, 5.0), gen.uniform(1.0, 5.0)};
    const double a = mixed_lebesgue_norm(f, p);
    const double b = mixed_lebesgue_norm(h, p);
    CHECK(mixed_lebesgue_norm(f + h, p) <= a + b + 1e-12 * (a + b));

    // |f| <= |f| + |h| pointwise
    CHECK(a <= mixed_lebesgue_norm(abs(f) + abs(h), p) * (1 + 1e-15));

    // Hoelder on the whole box
    long double lhs = 0.0L;
    for (std::size_t i = 0; i < f.size(); ++i) lhs += static_cast<long double>(f.abs(i)) * h.abs(i) * g.cell_volume();
    CHECK(static_cast<double>(lhs) <= a * mixed_lebesgue_norm(h, conjugate(p)) * (1 + 1e-12));
  }
}
