#include <cmath>
#include <numbers>
#include <vector>

#include "amalgam/bmo.hpp"
#include "amalgam/errors.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace amalgam;

namespace {

WindowSpec ball1(double c, double r) { return WindowSpec::ball({c, 0, 0}, r); }

// (1/count) sum |b - mean| over the midpoints in the open ball, straight loops.
double oscillation_oracle(const GridFunction& b, const Point& c, double r) {
  const Grid& g = b.grid();
  long double sum = 0.0L;
  std::size_t count = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (oracle::in_ball(g, i, c, r)) {
      sum += b.real(i);
      ++count;
    }
  }
  const long double mean = sum / count;
  long double dev = 0.0L;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (oracle::in_ball(g, i, c, r)) dev += std::abs(b.real(i) - mean);
  }
  return static_cast<double>(dev / count);
}

}  // namespace

TEST_CASE("mean oscillation examples") {
  const Grid g = make_grid({{-2, 2}}, {4096});
  CHECK(mean_oscillation(sample(constant_field(3.0), g), ball1(0.0, 1.0)) == 0.0);

  std::vector<double> x(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) x[i] = g.midpoint(0, i);
  const GridFunction bx(g, x);
  CHECK(mean_oscillation(bx, ball1(0.0, 1.0)) == doctest::Approx(0.5).epsilon(1e-3));

  const GridFunction lg = sample(log_abs(), g);
  const double first = mean_oscillation(lg, ball1(0.0, 0.25));
  for (double r : {0.5, 1.0, 2.0}) CHECK(mean_oscillation(lg, ball1(0.0, r)) == doctest::Approx(first).epsilon(1e-2));
  // (1/2r) int_{-r}^{r} |log|x| - (log r - 1)| dx = 2/e
  CHECK(first == doctest::Approx(2.0 / std::numbers::e).epsilon(1e-2));
}

TEST_CASE("mean oscillation against straight loops") {
  oracle::Gen gen(61);
  const Grid g = make_grid({{-3, 3}, {-3, 3}}, {48, 48});
  for (int trial = 0; trial < 10; ++trial) {
    const GridFunction b = oracle::bumps(g, gen);
    const Point c = {gen.uniform(-1.0, 1.0), gen.uniform(-1.0, 1.0), 0.0};
    const double r = gen.uniform(0.3, 1.5);
    CHECK(mean_oscillation(b, WindowSpec::ball(c, r)) == doctest::Approx(oscillation_oracle(b, c, r)).epsilon(1e-12));
  }
}

TEST_CASE("ball means") {
  const Grid g = make_grid({{-2, 2}}, {8});
  const GridFunction f(g, {1, 2, 3, 4, 5, 6, 7, 8});
  CHECK(ball_mean(f, ball1(0.0, 1.0)) == doctest::Approx(4.5));
  CHECK_THROWS_WITH_AS(ball_mean(f, ball1(0.0, 0.1)), doctest::Contains("no midpoint"), DomainError);
  CHECK_THROWS_AS(ball_mean(f, WindowSpec::cube(1.0, {0, 0, 0})), DomainError);
  const GridFunction z(g, std::vector<double>(8, 1.0), std::vector<double>(8, 1.0));
  CHECK_THROWS_WITH_AS(mean_oscillation(z, ball1(0.0, 1.0)), doctest::Contains("must be real"), DomainError);
}

TEST_CASE("ball families") {
  const Grid g = make_grid({{-4, 4}}, {256});
  const BallFamily fam = BallFamily::default_for(g);
  CHECK(fam.stride == 4);
  CHECK(fam.radii.front() == 0.0625);
  CHECK(fam.radii.back() == 2.0);
  for (const WindowSpec& w : family_members(fam, g)) {
    CHECK(w.center[0] - w.r >= -4.0);
    CHECK(w.center[0] + w.r <= 4.0);
  }
  BallFamily clipped = fam;
  clipped.policy = ContainmentPolicy::Clipped;
  CHECK(family_members(clipped, g).size() > family_members(fam, g).size());
  BallFamily empty;
  CHECK_THROWS_WITH_AS(family_members(empty, g), doctest::Contains("empty ball family"), DomainError);
  empty.radii = {1.0};
  empty.stride = 0;
  CHECK_THROWS_AS(family_members(empty, g), DomainError);
}

TEST_CASE("BMO norm") {
  const Grid g = make_grid({{-4, 4}}, {512});
  const BallFamily fam = BallFamily::default_for(g);
  CHECK(bmo_norm(sample(constant_field(-2.0), g), fam) == 0.0);

  oracle::Gen gen(62);
  for (int trial = 0; trial < 10; ++trial) {
    const GridFunction b = oracle::bumps(g, gen);
    const double v = bmo_norm(b, fam);
    CHECK(v <= 2.0 * b.max_abs());
    CHECK(v == mixed_bmo_norm(b, {1.0}, fam));
    CHECK(bmo_norm(-3.0 * b, fam) == doctest::Approx(3.0 * v).epsilon(1e-12));
    CHECK(bmo_norm(b + sample(constant_field(5.0), g), fam) == doctest::Approx(v).epsilon(1e-12));

    // enlarging the family never lowers the sup
    BallFamily fewer = fam;
    fewer.radii.pop_back();
    CHECK(bmo_norm(b, fewer) <= v);
  }

  const GridFunction lg = sample(log_abs(), g);
  BallFamily coarse = fam;
  coarse.stride = 8;
  const double fine_v = bmo_norm(lg, fam);
  CHECK(fine_v > 0.0);
  CHECK(bmo_norm(lg, coarse) == doctest::Approx(fine_v).epsilon(5e-2));
}

TEST_CASE("mixed BMO norm") {
  const Grid g = make_grid({{-3, 3}, {-3, 3}}, {48, 48});
  const BallFamily fam = BallFamily::default_for(g);
  CHECK(mixed_bmo_norm(sample(constant_field(1.0), g), {3.0, 2.0}, fam) == 0.0);
  oracle::Gen gen(63);
  const GridFunction b = oracle::bumps(g, gen);
  CHECK(mixed_bmo_norm(b, {1.0, 1.0}, fam) == bmo_norm(b, fam));
  CHECK(mixed_bmo_norm(b, {3.0, 2.0}, fam) >= bmo_norm(b, fam) * (1 - 1e-12));
  CHECK_THROWS_AS(mixed_bmo_norm(b, {3.0}, fam), DomainError);
}

TEST_CASE("doubling drift") {
  const Grid g = make_grid({{-2, 2}}, {4096});
  const GridFunction lg = sample(log_abs(), g);
  const DriftReport rep = doubling_drift(lg, ball1(0.0, 0.25), 1);
  CHECK(rep.drift == doctest::Approx(std::log(4.0)).epsilon(1e-2));
  CHECK(rep.pass);
  CHECK(rep.bound == doctest::Approx(2.0 * 2.0 * rep.chain_bmo).epsilon(1e-15));

  const DriftReport flat = doubling_drift(sample(constant_field(7.0), g), ball1(0.0, 0.25), 2);
  CHECK(flat.drift == 0.0);
  CHECK(flat.pass);

  CHECK_THROWS_WITH_AS(doubling_drift(lg, ball1(0.0, 0.5), 2), doctest::Contains("leaves the box"), DomainError);
  CHECK_THROWS_AS(doubling_drift(lg, ball1(0.0, 0.25), -1), DomainError);
}

TEST_CASE("single doubling chain bound") {
  oracle::Gen gen(64);
  const Grid g = make_grid({{-4, 4}, {-4, 4}}, {64, 64});
  for (int trial = 0; trial < 20; ++trial) {
    const GridFunction b = oracle::bumps(g, gen);
    const Point c = {gen.uniform(-1.0, 1.0), gen.uniform(-1.0, 1.0), 0.0};
    const double r = gen.uniform(0.3, 1.0);
    const double step = std::abs(ball_mean(b, WindowSpec::ball(c, 2 * r)) - ball_mean(b, WindowSpec::ball(c, r)));
    // on the grid the containment constant is the ratio of midpoint counts
    double small = 0.0;
    double big = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      small += oracle::in_ball(g, i, c, r) ? 1.0 : 0.0;
      big += oracle::in_ball(g, i, c, 2 * r) ? 1.0 : 0.0;
    }
    CHECK(step <= (big / small) * mean_oscillation(b, WindowSpec::ball(c, 2 * r)) * (1 + 1e-9) + 1e-15);
  }
}
