#include <cmath>
#include <vector>

#include "amalgam/errors.hpp"
#include "amalgam/grid.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace amalgam;

namespace {

std::vector<double> samples(const GridFunction& f) { return f.real(); }

}  // namespace

TEST_CASE("make_grid spacings") {
  const Grid a = make_grid({{-1, 1}}, {4});
  CHECK(a.dim() == 1);
  CHECK(a.spacing(0) == 0.5);
  CHECK(a.size() == 4);
  CHECK(a.midpoint(0, 0) == -0.75);

  const Grid b = make_grid({{0, 2}, {0, 3}}, {2, 3});
  CHECK(b.spacing(0) == 1.0);
  CHECK(b.spacing(1) == 1.0);
  CHECK(b.size() == 6);
  CHECK(b.cell_volume() == 1.0);
}

TEST_CASE("make_grid rejects bad input") {
  CHECK_THROWS_WITH_AS(make_grid({{0, 1}}, {0}), doctest::Contains("degenerate axis"), DomainError);
  CHECK_THROWS_WITH_AS(make_grid({{1, 1}}, {4}), doctest::Contains("degenerate axis"), DomainError);
  CHECK_THROWS_WITH_AS(make_grid({}, {}), doctest::Contains("dimension"), DomainError);
  CHECK_THROWS_AS(make_grid({{0, 1}, {0, 1}, {0, 1}, {0, 1}}, {2, 2, 2, 2}), DomainError);
  CHECK_THROWS_AS(make_grid({{0, 1}}, {2, 3}), DomainError);
  CHECK_THROWS_WITH_AS(make_grid({{0, 1}, {0, 1}}, {1000, 1000}, 1000),
                       doctest::Contains("cell budget"), DomainError);
}

TEST_CASE("flat and unflat are inverse") {
  const Grid g = make_grid({{0, 1}, {0, 1}, {0, 1}}, {3, 4, 5});
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(g.flat(g.unflat(i)) == i);
  // axis 0 fastest
  CHECK(g.flat({1, 0, 0}) == 1);
  CHECK(g.flat({0, 1, 0}) == 3);
  CHECK(g.flat({0, 0, 1}) == 12);
}

TEST_CASE("scaled grids keep midpoints aligned under powers of two") {
  const Grid g = make_grid({{-3, 5}}, {16});
  const Grid s = g.scaled(0.25);
  CHECK(s.count(0) == 16);
  for (std::size_t i = 0; i < 16; ++i) CHECK(s.midpoint(0, i) == 0.25 * g.midpoint(0, i));
  CHECK_THROWS_AS(g.scaled(0.0), DomainError);
}

TEST_CASE("sample: constant and indicator-ball") {
  const Grid g = make_grid({{-2, 2}}, {8});
  for (double v : samples(sample(constant_field(1.0), g))) CHECK(v == 1.0);
  const std::vector<double> expect = {0, 0, 1, 1, 1, 1, 0, 0};
  CHECK(samples(sample(indicator_ball({0.0}, 1.0), g)) == expect);
}

TEST_CASE("sample: singular fields need midpoints off the singularity") {
  const Grid odd = make_grid({{-2, 2}}, {7});
  CHECK_THROWS_WITH_AS(sample(log_abs(), odd), doctest::Contains("singular midpoint"), DomainError);
  const Grid even = make_grid({{-2, 2}}, {8});
  const GridFunction f = sample(log_abs(), even);
  CHECK(f.real(3) == std::log(0.25));
  CHECK_THROWS_AS(sample(power_radial(-1.5), even), DomainError);
}

TEST_CASE("sample: parameter validation") {
  const Grid g = make_grid({{-2, 2}}, {8});
  CHECK_THROWS_WITH_AS(sample(FieldSpec{"nope", {}}, g), doctest::Contains("unknown field"), DomainError);
  CHECK_THROWS_AS(sample(indicator_ball({0.0}, -1.0), g), DomainError);
  CHECK_THROWS_AS(sample(indicator_ball({0.0, 0.0}, 1.0), g), DomainError);
  CHECK_THROWS_AS(sample(FieldSpec{"indicator-box", {{"lower", {0.0}}}}, g), DomainError);
  CHECK_THROWS_AS(sample(gaussian_field({0.0}, 0.0, 1.0), g), DomainError);
  CHECK_THROWS_AS(sample(FieldSpec{"random-bump-sum", {{"seed", {1.5}}}}, g), DomainError);
}

TEST_CASE("sample: gaussian and modulated indicator at midpoints") {
  const Grid g = make_grid({{-2, 2}}, {8});
  const GridFunction f = sample(gaussian_field({0.5}, 0.5, 2.0), g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.midpoint(0, i) - 0.5;
    CHECK(f.real(i) == doctest::Approx(2.0 * std::exp(-2.0 * x * x)).epsilon(1e-15));
  }
  const GridFunction m =
      sample(FieldSpec{"cosine-modulated-indicator", {{"radius", {1.0}}, {"m", {1.0}}, {"t", {0.5}}}}, g);
  CHECK(m.is_complex());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.midpoint(0, i);
    if (std::abs(x) < 1.0) {
      CHECK(m.real(i) == doctest::Approx(std::cos(-4.0 * x)));
      CHECK(m.imag(i) == doctest::Approx(std::sin(-4.0 * x)));
    } else {
      CHECK(m.abs(i) == 0.0);
    }
  }
}

TEST_CASE("sample is deterministic") {
  const Grid g = make_grid({{-3, 3}, {-3, 3}}, {32, 32});
  for (unsigned long long seed : {0ULL, 1ULL, 99ULL}) {
    CHECK(samples(sample(random_bump_sum(seed), g)) == samples(sample(random_bump_sum(seed), g)));
  }
  CHECK(samples(sample(random_bump_sum(1), g)) != samples(sample(random_bump_sum(2), g)));
}

TEST_CASE("window masks") {
  const Grid g = make_grid({{-2, 2}}, {8});
  CHECK(samples(window_mask(WindowSpec::ball({0, 0, 0}, 1.0), g)) ==
        samples(sample(indicator_ball({0.0}, 1.0), g)));

  const Grid u = make_grid({{0, 2}}, {4});
  const std::vector<double> first = {1, 1, 0, 0};
  const std::vector<double> second = {0, 0, 1, 1};
  CHECK(samples(window_mask(WindowSpec::cube(1.0, {0, 0, 0}), u)) == first);
  CHECK(samples(window_mask(WindowSpec::cube(1.0, {1, 0, 0}), u)) == second);
  CHECK_THROWS_AS(WindowSpec::ball({0, 0, 0}, 0.0), DomainError);
  CHECK_THROWS_AS(window_mask(WindowSpec::ball({5, 0, 0}, 1.0), g), DomainError);
}

TEST_CASE("cube masks partition the box") {
  const Grid g = make_grid({{-2, 2}, {0, 3}}, {16, 12});
  for (double r : {0.25, 0.5, 1.0}) {
    std::vector<double> sum(g.size(), 0.0);
    const long long k0lo = static_cast<long long>(std::floor(-2.0 / r));
    for (long long k0 = k0lo; k0 * r < 2.0; ++k0) {
      for (long long k1 = 0; k1 * r < 3.0; ++k1) {
        const GridFunction m = window_mask(WindowSpec::cube(r, {k0, k1, 0}), g);
        for (std::size_t i = 0; i < g.size(); ++i) sum[i] += m.real(i);
      }
    }
    for (double v : sum) CHECK(v == 1.0);
  }
}

TEST_CASE("restrict") {
  const Grid g = make_grid({{-2, 2}}, {8});
  const GridFunction one = sample(constant_field(1.0), g);
  const WindowSpec b = WindowSpec::ball({0, 0, 0}, 1.0);
  CHECK(samples(restrict_to(one, b)) == samples(sample(indicator_ball({0.0}, 1.0), g)));

  oracle::Gen gen(11);
  const GridFunction f = oracle::bumps(g, gen);
  CHECK(samples(restrict_to(f, WindowSpec::ball({0, 0, 0}, 10.0))) == samples(f));
  const GridFunction box = sample(indicator_box({-2.0}, {-1.0}), g);
  for (double v : samples(restrict_to(box, WindowSpec::ball({1.5, 0, 0}, 0.5)))) CHECK(v == 0.0);
  CHECK(samples(restrict_to(restrict_to(f, b), b)) == samples(restrict_to(f, b)));
}

TEST_CASE("grid mismatch is rejected") {
  const GridFunction a = sample(constant_field(1.0), make_grid({{0, 1}}, {4}));
  const GridFunction b = sample(constant_field(1.0), make_grid({{0, 1}}, {8}));
  CHECK_THROWS_WITH_AS(a + b, doctest::Contains("grid mismatch"), DomainError);
  CHECK_THROWS_AS(GridFunction(make_grid({{0, 1}}, {4}), {1.0, 2.0}), DomainError);
  CHECK_THROWS_AS(GridFunction(make_grid({{0, 1}}, {2}), {1.0, NAN}), DomainError);
}

TEST_CASE("evaluate_at interpolates between midpoints") {
  const Grid g = make_grid({{0, 4}}, {4});
  const GridFunction f(g, {0.0, 1.0, 2.0, 3.0});
  CHECK(evaluate_at(f, {1.0, 0, 0}).real() == doctest::Approx(0.5));
  CHECK(evaluate_at(f, {2.5, 0, 0}).real() == doctest::Approx(2.0));
  CHECK(evaluate_at(f, {-5.0, 0, 0}).real() == 0.0);
  CHECK(evaluate_at(f, {9.0, 0, 0}).real() == 3.0);
}
