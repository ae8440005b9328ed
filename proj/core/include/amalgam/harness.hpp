#pragma once

// Verification suites, sweep drivers and report emission.

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "amalgam/amalgam.hpp"
#include "amalgam/bmo.hpp"
#include "amalgam/config.hpp"
#include "amalgam/grid.hpp"
#include "amalgam/norms.hpp"

namespace amalgam {

struct Record {
  std::string id;
  std::string anchor;  // which statement the record witnesses; never empty
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool pass = false;
};

class SuiteReport {
public:
  explicit SuiteReport(std::string suite = {}) : suite_(std::move(suite)) {}

  const std::string& suite() const noexcept { return suite_; }
  const std::vector<Record>& records() const noexcept { return records_; }
  const std::map<std::string, double>& constants() const noexcept { return constants_; }
  const std::map<std::string, std::string>& config_echo() const noexcept { return echo_; }
  double wall_ms() const noexcept { return wall_ms_; }

  // Throws DomainError for a record without an anchor.
  void add(Record record);
  void add(const std::string& id, const std::string& anchor, double lhs, double rhs, bool pass);
  void constant(const std::string& key, double value) { constants_[key] = value; }
  void echo(const std::string& key, const std::string& value) { echo_[key] = value; }
  void set_wall_ms(double ms) { wall_ms_ = ms; }

  bool pass() const;
  std::size_t failures() const;
  const Record* find(const std::string& id) const;

  // wall_ms is the only nondeterministic field; omit it to compare runs.
  std::string to_json(bool include_timing = true) const;
  static SuiteReport from_json(const std::string& text);

private:
  std::string suite_;
  std::vector<Record> records_;
  std::map<std::string, double> constants_;
  std::map<std::string, std::string> echo_;
  double wall_ms_ = 0.0;
};

const std::vector<std::string>& suite_names();

// Throws DomainError("unknown suite: ...") for names outside suite_names().
SuiteReport run_suite(const std::string& name, const Config& config);

// Seeded sums of 1 to 5 Gaussian bumps, optionally plus a box indicator.
GridFunction random_function(const Grid& grid, std::uint64_t seed, double spread = 1.0);

// Least squares slope and RMS residual of y against x.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// ---------------------------------------------------------------------------
// Fractional integral scaling sweep.

struct HlsReport {
  std::vector<double> dilations;
  std::vector<std::vector<double>> ratios;  // [function][dilation]
  std::vector<double> slopes;               // fitted d log R / d log t per function
  double predicted_slope = 0.0;             // n/alpha - n/beta - gamma
  double max_spread = 0.0;                  // max over functions of max R / min R
  double max_slope_error = 0.0;
  bool matched = false;
  bool pass = false;
};

// R = ||I_gamma f||_{(q,s)^beta} / ||f||_{(p,s)^alpha}, discrete norms, over
// dilates delta_t f. The sweep is given for t = 1 and rescaled by 1/t.
HlsReport hls_ratio_sweep(const ExponentSystem& sys, const std::vector<GridFunction>& family,
                          const std::vector<double>& dilations, const RadiusSweep& sweep);

// ---------------------------------------------------------------------------
// Commutator upper bound.

struct CommutatorUpperReport {
  std::vector<double> ratios;          // ||[b,I]f|| / (||b||_* ||f||), all pairs
  std::vector<double> group_constants; // max ratio within each group
  double median_constant = 0.0;
  bool pass = false;
};

// groups[k] is a list of (b, f) pairs; each group yields one measured
// constant and the constants must agree within +-50% of their median.
CommutatorUpperReport commutator_upper_sweep(
    const std::vector<std::vector<std::pair<GridFunction, GridFunction>>>& groups,
    const ExponentSystem& sys, const RadiusSweep& sweep);

// ---------------------------------------------------------------------------
// Commutator lower-bound probe.

struct LowerProbeReport {
  double oscillation = 0.0;     // (1/|B|) int_B |b - b_{B_z0}|
  double operator_bound = 0.0;  // chain bound with the coefficients up to M
  double tail = 0.0;            // estimated sum_{|m|>M} |a_m| / sum_{|m|<=M} |a_m|
  std::vector<double> partial_sums;  // sum_{|m|<=k} |a_m|, k = 0..M_ext
  bool partial_sums_converge = false;
  bool pass = false;
};

struct LowerProbeOptions {
  int cutoff = 8;                  // M
  double period = 8.0;             // side of the periodic cell around z0
  std::size_t quadrature_points = 512;  // per axis, coefficient quadrature
  double max_tail = 0.2;
};

// b on its grid; B = B(x0, t), B_z0 = B(x0 + z0 t, t). Requires 0 not in B(z0, 2).
LowerProbeReport commutator_lower_probe(const GridFunction& b, const ExponentSystem& sys,
                                        const Point& x0, double t, const Point& z0,
                                        const RadiusSweep& sweep,
                                        const LowerProbeOptions& options = {});

// Fourier coefficients of |u|^{n-gamma} psi(u) on the periodic cell of side L
// centered at z0, psi a smooth cutoff equal to 1 on B(z0, 2). Index order:
// m_1 fastest, each m_i in [-M, M].
std::vector<std::complex<double>> kernel_fourier_coefficients(int n, double gamma, const Point& z0,
                                                              int M, double period,
                                                              std::size_t points);

}  // namespace amalgam
