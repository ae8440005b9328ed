#include "amalgam/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "amalgam/errors.hpp"
#include "amalgam/random.hpp"

namespace amalgam {

// ============================================================================
// Grid

double Grid::cell_volume() const noexcept {
  double v = 1.0;
  for (int a = 0; a < dim_; ++a) v *= h_[a];
  return v;
}

Point Grid::midpoint(std::size_t flat_index) const {
  const Index idx = unflat(flat_index);
  Point x{};
  for (int a = 0; a < dim_; ++a) x[a] = midpoint(a, idx[a]);
  return x;
}

Index Grid::unflat(std::size_t flat_index) const noexcept {
  Index idx{};
  idx[0] = flat_index % n_[0];
  flat_index /= n_[0];
  idx[1] = flat_index % n_[1];
  idx[2] = flat_index / n_[1];
  return idx;
}

Grid Grid::scaled(double factor) const {
  if (!(factor > 0.0) || !std::isfinite(factor)) throw DomainError("scale factor must be positive");
  Grid g = *this;
  for (int a = 0; a < dim_; ++a) {
    g.lo_[a] = lo_[a] * factor;
    g.hi_[a] = hi_[a] * factor;
    g.h_[a] = (g.hi_[a] - g.lo_[a]) / static_cast<double>(n_[a]);
  }
  return g;
}

bool Grid::operator==(const Grid& o) const noexcept {
  if (dim_ != o.dim_) return false;
  for (int a = 0; a < dim_; ++a) {
    if (lo_[a] != o.lo_[a] || hi_[a] != o.hi_[a] || n_[a] != o.n_[a]) return false;
  }
  return true;
}

Grid make_grid(const std::vector<Interval>& bounds, const std::vector<long long>& counts,
               std::size_t cell_budget) {
  const std::size_t dim = bounds.size();
  if (dim == 0 || dim > static_cast<std::size_t>(kMaxDim)) {
    throw DomainError("dimension must be 1, 2 or 3 (got " + std::to_string(dim) + ")");
  }
  if (counts.size() != dim) throw DomainError("bounds and counts differ in length");
  Grid g;
  g.dim_ = static_cast<int>(dim);
  std::size_t total = 1;
  for (std::size_t a = 0; a < dim; ++a) {
    const double lo = bounds[a].lo;
    const double hi = bounds[a].hi;
    if (counts[a] < 2 || !std::isfinite(lo) || !std::isfinite(hi) || !(hi > lo)) {
      throw DomainError("degenerate axis " + std::to_string(a));
    }
    const auto n = static_cast<std::size_t>(counts[a]);
    if (n > cell_budget || total > cell_budget / n) throw DomainError("cell budget exceeded");
    total *= n;
    g.lo_[a] = lo;
    g.hi_[a] = hi;
    g.n_[a] = n;
    g.h_[a] = (hi - lo) / static_cast<double>(n);
  }
  g.size_ = total;
  return g;
}

// ============================================================================
// GridFunction

namespace {

void require_finite(const std::vector<double>& v) {
  for (double x : v) {
    if (!std::isfinite(x)) throw DomainError("non-finite sample");
  }
}

}  // namespace

GridFunction::GridFunction(Grid grid, std::vector<double> re)
    : grid_(std::move(grid)), re_(std::move(re)) {
  if (re_.size() != grid_.size()) throw DomainError("sample count does not match grid");
  require_finite(re_);
}

GridFunction::GridFunction(Grid grid, std::vector<double> re, std::vector<double> im)
    : grid_(std::move(grid)), re_(std::move(re)), im_(std::move(im)) {
  if (re_.size() != grid_.size()) throw DomainError("sample count does not match grid");
  if (!im_.empty() && im_.size() != re_.size()) throw DomainError("imaginary part size mismatch");
  require_finite(re_);
  require_finite(im_);
}

GridFunction GridFunction::zeros(const Grid& grid) {
  return GridFunction(grid, std::vector<double>(grid.size(), 0.0));
}

double GridFunction::abs(std::size_t i) const {
  return im_.empty() ? std::abs(re_[i]) : std::hypot(re_[i], im_[i]);
}

std::vector<double> GridFunction::abs_values() const {
  std::vector<double> out(re_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = abs(i);
  return out;
}

double GridFunction::max_abs() const {
  double m = 0.0;
  for (std::size_t i = 0; i < re_.size(); ++i) m = std::max(m, abs(i));
  return m;
}

void require_same_grid(const GridFunction& a, const GridFunction& b) {
  if (a.grid() != b.grid()) throw DomainError("grid mismatch");
}

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
  require_same_grid(a, b);
  std::vector<double> re(a.size());
  for (std::size_t i = 0; i < re.size(); ++i) re[i] = a.real(i) + b.real(i);
  if (!a.is_complex() && !b.is_complex()) return GridFunction(a.grid(), std::move(re));
  std::vector<double> im(a.size());
  for (std::size_t i = 0; i < im.size(); ++i) im[i] = a.imag(i) + b.imag(i);
  return GridFunction(a.grid(), std::move(re), std::move(im));
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
  require_same_grid(a, b);
  std::vector<double> re(a.size());
  for (std::size_t i = 0; i < re.size(); ++i) re[i] = a.real(i) - b.real(i);
  if (!a.is_complex() && !b.is_complex()) return GridFunction(a.grid(), std::move(re));
  std::vector<double> im(a.size());
  for (std::size_t i = 0; i < im.size(); ++i) im[i] = a.imag(i) - b.imag(i);
  return GridFunction(a.grid(), std::move(re), std::move(im));
}

GridFunction operator*(const GridFunction& a, const GridFunction& b) {
  require_same_grid(a, b);
  std::vector<double> re(a.size());
  if (!a.is_complex() && !b.is_complex()) {
    for (std::size_t i = 0; i < re.size(); ++i) re[i] = a.real(i) * b.real(i);
    return GridFunction(a.grid(), std::move(re));
  }
  std::vector<double> im(a.size());
  for (std::size_t i = 0; i < re.size(); ++i) {
    const std::complex<double> z = a.at(i) * b.at(i);
    re[i] = z.real();
    im[i] = z.imag();
  }
  return GridFunction(a.grid(), std::move(re), std::move(im));
}

GridFunction operator*(double c, const GridFunction& f) {
  std::vector<double> re(f.size());
  for (std::size_t i = 0; i < re.size(); ++i) re[i] = c * f.real(i);
  if (!f.is_complex()) return GridFunction(f.grid(), std::move(re));
  std::vector<double> im(f.size());
  for (std::size_t i = 0; i < im.size(); ++i) im[i] = c * f.imag(i);
  return GridFunction(f.grid(), std::move(re), std::move(im));
}

GridFunction operator*(std::complex<double> c, const GridFunction& f) {
  if (c.imag() == 0.0) return c.real() * f;
  std::vector<double> re(f.size());
  std::vector<double> im(f.size());
  for (std::size_t i = 0; i < re.size(); ++i) {
    const std::complex<double> z = c * f.at(i);
    re[i] = z.real();
    im[i] = z.imag();
  }
  return GridFunction(f.grid(), std::move(re), std::move(im));
}

GridFunction abs(const GridFunction& f) { return GridFunction(f.grid(), f.abs_values()); }

GridFunction real_part(const GridFunction& f) { return GridFunction(f.grid(), f.real()); }

GridFunction conj(const GridFunction& f) {
  if (!f.is_complex()) return f;
  std::vector<double> im(f.imag());
  for (double& x : im) x = -x;
  return GridFunction(f.grid(), f.real(), std::move(im));
}

// ============================================================================
// Windows

WindowSpec WindowSpec::ball(const Point& center, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("window radius must be positive");
  WindowSpec w;
  w.kind = WindowKind::Ball;
  w.center = center;
  w.r = r;
  return w;
}

WindowSpec WindowSpec::cube(double side, const LatticeIndex& k) {
  if (!(side > 0.0) || !std::isfinite(side)) throw DomainError("cube side must be positive");
  WindowSpec w;
  w.kind = WindowKind::Cube;
  w.r = side;
  w.k = k;
  return w;
}

bool IndexBox::empty(int dim) const {
  for (int a = 0; a < dim; ++a) {
    if (hi[a] <= lo[a]) return true;
  }
  return false;
}

IndexBox ball_index_box(const Grid& grid, const Point& center, double r) {
  IndexBox box;
  for (int a = 0; a < kMaxDim; ++a) {
    if (a >= grid.dim()) {
      box.lo[a] = 0;
      box.hi[a] = 1;
      continue;
    }
    const double h = grid.spacing(a);
    const double first = std::ceil((center[a] - r - grid.lower(a)) / h - 0.5) - 1.0;
    const double last = std::floor((center[a] + r - grid.lower(a)) / h - 0.5) + 1.0;
    const double n = static_cast<double>(grid.count(a));
    const double lo = std::clamp(first, 0.0, n);
    const double hi = std::clamp(last + 1.0, 0.0, n);
    box.lo[a] = static_cast<std::size_t>(lo);
    box.hi[a] = std::max(box.lo[a], static_cast<std::size_t>(hi));
  }
  return box;
}

bool midpoint_in_ball(const Grid& grid, const Index& idx, const Point& center, double r) {
  double d2 = 0.0;
  for (int a = 0; a < grid.dim(); ++a) {
    const double d = grid.midpoint(a, idx[a]) - center[a];
    d2 += d * d;
  }
  return d2 < r * r;
}

GridFunction window_mask(const WindowSpec& w, const Grid& grid) {
  std::vector<double> m(grid.size(), 0.0);
  if (w.kind == WindowKind::Ball) {
    if (!(w.r > 0.0)) throw DomainError("window radius must be positive");
    for (int a = 0; a < grid.dim(); ++a) {
      if (w.center[a] < grid.lower(a) - w.r || w.center[a] > grid.upper(a) + w.r) {
        throw DomainError("ball center outside the enlarged box");
      }
    }
    const IndexBox box = ball_index_box(grid, w.center, w.r);
    for (std::size_t i2 = box.lo[2]; i2 < box.hi[2]; ++i2) {
      for (std::size_t i1 = box.lo[1]; i1 < box.hi[1]; ++i1) {
        for (std::size_t i0 = box.lo[0]; i0 < box.hi[0]; ++i0) {
          const Index idx{i0, i1, i2};
          if (midpoint_in_ball(grid, idx, w.center, w.r)) m[grid.flat(idx)] = 1.0;
        }
      }
    }
  } else {
    if (!(w.r > 0.0)) throw DomainError("cube side must be positive");
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const Index idx = grid.unflat(i);
      bool inside = true;
      for (int a = 0; a < grid.dim() && inside; ++a) {
        const double cell = std::floor(grid.midpoint(a, idx[a]) / w.r);
        inside = cell == static_cast<double>(w.k[a]);
      }
      if (inside) m[i] = 1.0;
    }
  }
  return GridFunction(grid, std::move(m));
}

GridFunction restrict_to(const GridFunction& f, const WindowSpec& w) {
  return window_mask(w, f.grid()) * f;
}

std::complex<double> evaluate_at(const GridFunction& f, const Point& x) {
  const Grid& g = f.grid();
  std::array<std::size_t, kMaxDim> base{};
  std::array<double, kMaxDim> frac{};
  for (int a = 0; a < g.dim(); ++a) {
    const double u = (x[a] - g.lower(a)) / g.spacing(a) - 0.5;
    const double top = static_cast<double>(g.count(a) - 2);
    const double i0 = std::clamp(std::floor(u), 0.0, top);
    base[a] = static_cast<std::size_t>(i0);
    frac[a] = std::clamp(u - i0, 0.0, 1.0);
  }
  std::complex<double> acc = 0.0;
  const int corners = 1 << g.dim();
  for (int c = 0; c < corners; ++c) {
    double w = 1.0;
    Index idx{};
    for (int a = 0; a < g.dim(); ++a) {
      const bool up = (c >> a) & 1;
      idx[a] = base[a] + (up ? 1 : 0);
      w *= up ? frac[a] : 1.0 - frac[a];
    }
    if (w != 0.0) acc += w * f.at(g.flat(idx));
  }
  return acc;
}

// ============================================================================
// Field catalogue

double FieldSpec::scalar(const std::string& key, double fallback) const {
  const auto it = params.find(key);
  if (it == params.end()) return fallback;
  if (it->second.size() != 1) throw DomainError("parameter '" + key + "' must be a scalar");
  return it->second.front();
}

std::vector<double> FieldSpec::vector(const std::string& key,
                                      const std::vector<double>& fallback) const {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

const std::vector<std::string>& field_catalogue() {
  static const std::vector<std::string> names = {
      "constant",     "indicator-ball", "indicator-box", "gaussian", "power-radial",
      "log-abs",      "cosine-modulated-indicator",      "random-bump-sum"};
  return names;
}

namespace {

Point point_param(const FieldSpec& spec, const std::string& key, int dim) {
  const std::vector<double> v = spec.vector(key, std::vector<double>(dim, 0.0));
  if (static_cast<int>(v.size()) != dim) {
    throw DomainError("parameter '" + key + "' must have " + std::to_string(dim) + " entries");
  }
  Point p{};
  for (int a = 0; a < dim; ++a) p[a] = v[a];
  return p;
}

double distance(const Point& x, const Point& c, int dim) {
  double d2 = 0.0;
  for (int a = 0; a < dim; ++a) d2 += (x[a] - c[a]) * (x[a] - c[a]);
  return std::sqrt(d2);
}

double min_spacing(const Grid& g) {
  double h = g.spacing(0);
  for (int a = 1; a < g.dim(); ++a) h = std::min(h, g.spacing(a));
  return h;
}

struct Bump {
  Point center{};
  double sigma = 1.0;
  double amplitude = 0.0;
};

struct BumpSum {
  std::vector<Bump> bumps;
  bool has_box = false;
  Point lower{};
  Point upper{};
  double box_amplitude = 0.0;
};

BumpSum draw_bump_sum(std::uint64_t seed, int dim, double spread) {
  Rng rng(seed);
  BumpSum s;
  const auto count = rng.integer(1, 5);
  for (long long j = 0; j < count; ++j) {
    Bump b;
    for (int a = 0; a < dim; ++a) b.center[a] = rng.uniform(-spread, spread);
    b.sigma = rng.uniform(0.1, 0.35) * spread;
    b.amplitude = rng.uniform(0.25, 1.0) * (rng.coin() ? -1.0 : 1.0);
    s.bumps.push_back(b);
  }
  s.has_box = rng.coin();
  if (s.has_box) {
    for (int a = 0; a < dim; ++a) {
      s.lower[a] = rng.uniform(-spread, 0.0);
      s.upper[a] = s.lower[a] + rng.uniform(0.25, 1.0) * spread;
    }
    s.box_amplitude = rng.uniform(0.25, 1.0) * (rng.coin() ? -1.0 : 1.0);
  }
  return s;
}

}  // namespace

GridFunction sample(const FieldSpec& spec, const Grid& grid) {
  const int n = grid.dim();
  const std::size_t N = grid.size();
  std::vector<double> re(N, 0.0);
  const std::string& name = spec.name;

  if (name == "constant") {
    std::fill(re.begin(), re.end(), spec.scalar("value", 1.0));
  } else if (name == "indicator-ball") {
    const Point c = point_param(spec, "center", n);
    const double r = spec.scalar("radius", 1.0);
    if (!(r > 0.0)) throw DomainError("indicator-ball radius must be positive");
    for (std::size_t i = 0; i < N; ++i) {
      if (midpoint_in_ball(grid, grid.unflat(i), c, r)) re[i] = 1.0;
    }
  } else if (name == "indicator-box") {
    if (!spec.has("lower") || !spec.has("upper")) {
      throw DomainError("indicator-box needs 'lower' and 'upper'");
    }
    const Point lo = point_param(spec, "lower", n);
    const Point hi = point_param(spec, "upper", n);
    for (std::size_t i = 0; i < N; ++i) {
      const Point x = grid.midpoint(i);
      bool inside = true;
      for (int a = 0; a < n && inside; ++a) inside = lo[a] <= x[a] && x[a] < hi[a];
      if (inside) re[i] = 1.0;
    }
  } else if (name == "gaussian") {
    const Point c = point_param(spec, "center", n);
    const double sigma = spec.scalar("sigma", 1.0);
    const double amp = spec.scalar("amplitude", 1.0);
    if (!(sigma > 0.0)) throw DomainError("gaussian sigma must be positive");
    for (std::size_t i = 0; i < N; ++i) {
      const double d = distance(grid.midpoint(i), c, n);
      re[i] = amp * std::exp(-d * d / (2.0 * sigma * sigma));
    }
  } else if (name == "power-radial" || name == "log-abs") {
    const Point c = point_param(spec, "center", n);
    const bool power = name == "power-radial";
    double a = 0.0;
    if (power) {
      if (!spec.has("a")) throw DomainError("power-radial needs exponent 'a'");
      a = spec.scalar("a", 0.0);
      const double pmax = spec.scalar("p_max", 1.0);
      if (!(pmax >= 1.0)) throw DomainError("power-radial p_max must be >= 1");
      if (!(a > -static_cast<double>(n) / pmax)) {
        throw DomainError("power-radial exponent must exceed -n/p_max");
      }
    }
    const bool singular = !power || a < 0.0;
    const double eps = 1e-9 * min_spacing(grid);
    for (std::size_t i = 0; i < N; ++i) {
      const double d = distance(grid.midpoint(i), c, n);
      if (singular && d < eps) throw DomainError("singular midpoint");
      re[i] = power ? std::pow(d, a) : std::log(d);
    }
  } else if (name == "cosine-modulated-indicator") {
    const Point c = point_param(spec, "center", n);
    const double r = spec.scalar("radius", 1.0);
    const double t = spec.scalar("t", 1.0);
    const Point m = point_param(spec, "m", n);
    if (!(r > 0.0) || !(t > 0.0)) throw DomainError("radius and t must be positive");
    std::vector<double> im(N, 0.0);
    for (std::size_t i = 0; i < N; ++i) {
      const Index idx = grid.unflat(i);
      if (!midpoint_in_ball(grid, idx, c, r)) continue;
      double phase = 0.0;
      for (int k = 0; k < n; ++k) phase += m[k] * grid.midpoint(k, idx[k]);
      phase *= -2.0 / t;
      re[i] = std::cos(phase);
      im[i] = std::sin(phase);
    }
    return GridFunction(grid, std::move(re), std::move(im));
  } else if (name == "random-bump-sum") {
    const double seed = spec.scalar("seed", 0.0);
    if (!(seed >= 0.0) || seed != std::floor(seed)) {
      throw DomainError("random-bump-sum seed must be a nonnegative integer");
    }
    const double spread = spec.scalar("spread", 1.0);
    if (!(spread > 0.0)) throw DomainError("random-bump-sum spread must be positive");
    const BumpSum s = draw_bump_sum(static_cast<std::uint64_t>(seed), n, spread);
    for (std::size_t i = 0; i < N; ++i) {
      const Point x = grid.midpoint(i);
      double v = 0.0;
      for (const Bump& b : s.bumps) {
        const double d = distance(x, b.center, n);
        v += b.amplitude * std::exp(-d * d / (2.0 * b.sigma * b.sigma));
      }
      if (s.has_box) {
        bool inside = true;
        for (int a = 0; a < n && inside; ++a) inside = s.lower[a] <= x[a] && x[a] < s.upper[a];
        if (inside) v += s.box_amplitude;
      }
      re[i] = v;
    }
  } else {
    throw DomainError("unknown field '" + name + "'");
  }
  return GridFunction(grid, std::move(re));
}

FieldSpec constant_field(double value) { return {"constant", {{"value", {value}}}}; }

FieldSpec indicator_ball(const std::vector<double>& center, double radius) {
  return {"indicator-ball", {{"center", center}, {"radius", {radius}}}};
}

FieldSpec indicator_box(const std::vector<double>& lower, const std::vector<double>& upper) {
  return {"indicator-box", {{"lower", lower}, {"upper", upper}}};
}

FieldSpec gaussian_field(const std::vector<double>& center, double sigma, double amplitude) {
  return {"gaussian", {{"center", center}, {"sigma", {sigma}}, {"amplitude", {amplitude}}}};
}

FieldSpec power_radial(double a) { return {"power-radial", {{"a", {a}}}}; }

FieldSpec log_abs() { return {"log-abs", {}}; }

FieldSpec random_bump_sum(unsigned long long seed) {
  return {"random-bump-sum", {{"seed", {static_cast<double>(seed)}}}};
}

}  // namespace amalgam
