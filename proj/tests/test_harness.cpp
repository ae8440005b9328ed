#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "amalgam/config.hpp"
#include "amalgam/errors.hpp"
#include "amalgam/harness.hpp"
#include "amalgam/operators.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace amalgam;

TEST_CASE("config parsing") {
  const Config cfg = parse_config(R"(
# comment
seed = 12
name = "x"   # trailing comment
flag = true
[grid]
bounds = [[-1, 1], [0, 2.5]]
counts = [8, 10]
[exps]
p = [2, "inf"]
alpha = 3.5
tolerances = { identity = 1e-12, band.width = 0.1 }
field = "gaussian"
params = { sigma = 0.5, center = [0, 1] }
)");
  CHECK(cfg.seed(0) == 12);
  CHECK(cfg.text("name", "") == "x");
  CHECK(cfg.at("flag").flag);
  const std::vector<Interval> b = cfg.intervals("grid.bounds", {});
  REQUIRE(b.size() == 2);
  CHECK(b[1].hi == 2.5);
  CHECK(cfg.numbers("grid.counts", {}) == std::vector<double>{8, 10});
  const std::vector<double> p = cfg.numbers("exps.p", {});
  CHECK(p[0] == 2.0);
  CHECK(std::isinf(p[1]));
  CHECK(cfg.number("exps.alpha", 0.0) == 3.5);
  CHECK(cfg.number("exps.tolerances.identity", 0.0) == 1e-12);
  CHECK(cfg.number("exps.tolerances.band.width", 0.0) == 0.1);
  CHECK(cfg.number("missing", 7.0) == 7.0);
  CHECK(cfg.table("grid").size() == 2);

  const FieldSpec f = cfg.field("exps");
  CHECK(f.name == "gaussian");
  CHECK(f.scalar("sigma", 0.0) == 0.5);
  CHECK(f.vector("center", {}) == std::vector<double>{0, 1});
}

TEST_CASE("config errors") {
  CHECK_THROWS_WITH_AS(parse_config("a = [1, 2"), doctest::Contains("invalid config"), DomainError);
  CHECK_THROWS_AS(parse_config("a = nan"), DomainError);
  CHECK_THROWS_AS(parse_config("= 3"), DomainError);
  CHECK_THROWS_AS(parse_config("a = 1 b = 2"), DomainError);
  CHECK_THROWS_AS(parse_config("a = \"open"), DomainError);
  CHECK_THROWS_WITH_AS(parse_config("seed = -1").seed(0), doctest::Contains("seed"), DomainError);
  CHECK_THROWS_AS(parse_config("seed = 1.5").seed(0), DomainError);
  CHECK_THROWS_WITH_AS(parse_config("x = 1").at("y"), doctest::Contains("missing key"), DomainError);
  CHECK_THROWS_AS(parse_config("x = 1").text("x", ""), DomainError);
  CHECK_THROWS_AS(parse_config("x = [1, 2]").intervals("x", {}), DomainError);
  CHECK_THROWS_AS(load_config("/nonexistent/path.toml"), DomainError);
  CHECK_THROWS_AS(parse_config("x = 1").field(""), DomainError);
}

TEST_CASE("config values print as TOML") {
  CHECK(ConfigValue::of(2.0).to_toml() == "2.0");
  CHECK(ConfigValue::of(kInf).to_toml() == "inf");
  const Config back = parse_config("x = " + ConfigValue::of(std::vector<double>{0.25, 3.0}).to_toml());
  CHECK(back.numbers("x", {}) == std::vector<double>{0.25, 3.0});
}

TEST_CASE("reports require anchors and round-trip through JSON") {
  SuiteReport rep("demo");
  CHECK_THROWS_WITH_AS(rep.add("id", "", 1.0, 2.0, true), doctest::Contains("no anchor"), DomainError);
  rep.add("a", "windowed Hoelder inequality", 1.0, 2.0, true);
  rep.add("b", "block space duality inequality", 3.0, 0.0, false);
  rep.add("c", "block space duality inequality", 0.0, 0.0, true);
  rep.constant("band.width", 1.25);
  rep.constant("unbounded", kInf);
  rep.echo("seed", "3");
  rep.set_wall_ms(12.5);

  CHECK_FALSE(rep.pass());
  CHECK(rep.failures() == 1);
  CHECK(rep.find("a")->ratio == 0.5);
  CHECK(std::isinf(rep.find("b")->ratio));
  CHECK(rep.find("c")->ratio == 0.0);
  CHECK(rep.find("zzz") == nullptr);

  const SuiteReport back = SuiteReport::from_json(rep.to_json());
  CHECK(back.suite() == "demo");
  CHECK(back.records().size() == 3);
  CHECK(back.constants() == rep.constants());
  CHECK(back.config_echo() == rep.config_echo());
  CHECK(back.wall_ms() == 12.5);
  CHECK(back.to_json() == rep.to_json());
  CHECK(rep.to_json(false).find("wall_ms") == std::string::npos);

  CHECK_THROWS_WITH_AS(SuiteReport::from_json("{"), doctest::Contains("malformed report"), DomainError);
  CHECK_THROWS_AS(SuiteReport::from_json(R"({"suite": "x", "records": [{"id": "a", "anchor": "", "lhs": 0,
                                          "rhs": 0, "ratio": 0, "pass": true}]})"),
                  DomainError);
}

TEST_CASE("least squares line") {
  const LineFit exact = fit_line({0, 1, 2, 3}, {1, 3, 5, 7});
  CHECK(exact.slope == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(exact.intercept == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(exact.residual == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));

  // y = x + (+-1): slope 1, rms residual 1
  const LineFit noisy = fit_line({0, 1, 2, 3}, {1, 0, 3, 2});
  CHECK(noisy.slope == doctest::Approx(0.6));
  CHECK(noisy.residual > 0.5);
  CHECK_THROWS_AS(fit_line({1}, {1}), DomainError);
  CHECK_THROWS_AS(fit_line({1, 1}, {0, 2}), DomainError);
}

TEST_CASE("random functions are seeded") {
  const Grid g = make_grid({{-4, 4}, {-4, 4}}, {32, 32});
  CHECK(random_function(g, 5).real() == random_function(g, 5).real());
  CHECK(random_function(g, 5).real() != random_function(g, 6).real());
  for (std::uint64_t s = 0; s < 20; ++s) CHECK(random_function(g, s).max_abs() > 0.0);
}

TEST_CASE("every suite passes at its defaults and is deterministic") {
  REQUIRE(suite_names().size() == 11);
  for (const std::string& name : suite_names()) {
    CAPTURE(name);
    const SuiteReport a = run_suite(name, Config{});
    CHECK(a.pass());
    CHECK_FALSE(a.records().empty());
    CHECK(a.config_echo().count("seed") + a.config_echo().size() > 0);
    for (const Record& r : a.records()) {
      CHECK_FALSE(r.anchor.empty());
      // anchors name statements, never numbered references
      for (const char* ref : {"Theorem", "Lemma", "Prop", "Remark", "Section", "Eq", "(", "\xc2\xa7"}) {
        CHECK(r.anchor.find(ref) == std::string::npos);
      }
    }
    const SuiteReport b = run_suite(name, Config{});
    CHECK(a.to_json(false) == b.to_json(false));
  }
}

TEST_CASE("suite selection and configuration") {
  CHECK_THROWS_WITH_AS(run_suite("bogus", Config{}), doctest::Contains("unknown suite"), DomainError);

  Config cfg;
  cfg.set("seed", ConfigValue::of(9.0));
  cfg.set("samples", ConfigValue::of(2.0));
  cfg.set("unused.key", ConfigValue::of(std::string("kept")));
  const SuiteReport rep = run_suite("norm-axioms", cfg);
  CHECK(rep.pass());
  CHECK(rep.config_echo().at("seed") == "9");
  CHECK(rep.config_echo().at("unused.key") == "\"kept\"");

  Config other = cfg;
  other.set("seed", ConfigValue::of(10.0));
  CHECK(run_suite("norm-axioms", other).to_json(false) != rep.to_json(false));

  Config bad;
  bad.set("grid.counts", ConfigValue::of(std::vector<double>{2.5}));
  CHECK_THROWS_AS(run_suite("norm-axioms", bad), DomainError);
}

TEST_CASE("HLS sweep inputs") {
  const ExponentSystem base = validate_exponents({2.0}, {32.0}, 2.0, 1);
  const ExponentSystem sys = with_target(base, {4.0}, 4.0, 0.25);
  CHECK(sys.gamma == 0.25);
  CHECK(sys.boundary);
  const Grid g = make_grid({{-16, 16}}, {512});
  const std::vector<GridFunction> fam = {sample(indicator_box({-1.0}, {1.0}), g)};
  const HlsReport rep = hls_ratio_sweep(sys, fam, {0.5, 1.0, 2.0, 4.0}, RadiusSweep::dyadic(-3, 2));
  CHECK(rep.predicted_slope == doctest::Approx(1.0 / 2.0 - 1.0 / 4.0 - 0.25).scale(1.0));
  CHECK(rep.matched);
  CHECK(rep.max_spread >= 1.0);
  CHECK(rep.slopes.size() == 1);
  CHECK_THROWS_AS(hls_ratio_sweep(sys, fam, {1.0}, RadiusSweep::dyadic(-3, 2)), DomainError);
  CHECK_THROWS_AS(hls_ratio_sweep(sys, {GridFunction::zeros(g)}, {1.0, 2.0}, RadiusSweep::dyadic(-3, 2)),
                  DomainError);
}

TEST_CASE("Fourier coefficients of the truncated kernel") {
  const int M = 4;
  const auto a = kernel_fourier_coefficients(1, 0.5, {5, 0, 0}, M, 8.0, 256);
  REQUIRE(a.size() == static_cast<std::size_t>(2 * M + 1));
  // real function: a_{-m} = conj(a_m)
  for (int m = 1; m <= M; ++m) {
    CHECK(std::abs(a[M - m] - std::conj(a[M + m])) <= 1e-12 * std::abs(a[M]));
  }
  CHECK(std::abs(a[M]) > 0.0);
  CHECK_THROWS_AS(kernel_fourier_coefficients(1, 0.5, {1, 0, 0}, M, 8.0, 256), DomainError);
  CHECK_THROWS_AS(kernel_fourier_coefficients(1, 0.5, {5, 0, 0}, M, 4.0, 256), DomainError);
}

TEST_CASE("lower probe rejects bad input") {
  const Grid g = make_grid({{-16, 16}}, {512});
  const GridFunction b = sample(log_abs(), g);
  const ExponentSystem base = validate_exponents({2.0}, {32.0}, 2.0, 1);
  const ExponentSystem sys = with_target(base, {4.0}, 4.0, 0.25);
  const RadiusSweep sweep = RadiusSweep::dyadic(-2, 1);
  CHECK_THROWS_AS(commutator_lower_probe(b, sys, {0, 0, 0}, 0.75, {5, 0, 0}, sweep), DomainError);
  CHECK_THROWS_AS(commutator_lower_probe(b, sys, {0, 0, 0}, 8.0, {5, 0, 0}, sweep), DomainError);
  CHECK_THROWS_AS(commutator_lower_probe(b, sys, {0, 0, 0}, 1.0, {1, 0, 0}, sweep), DomainError);
  LowerProbeOptions opt;
  opt.cutoff = 0;
  CHECK_THROWS_AS(commutator_lower_probe(b, sys, {0, 0, 0}, 1.0, {5, 0, 0}, sweep, opt), DomainError);
}
