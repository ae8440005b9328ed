#pragma once

// Tensor grids, sampled functions, window masks and the builtin test fields.
//
// Storage order: axis 0 varies fastest. Axis 0 is the innermost axis of every
// iterated norm (the x_1 integral).

#include <array>
#include <complex>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace amalgam {

inline constexpr int kMaxDim = 3;
inline constexpr std::size_t kDefaultCellBudget = std::size_t{1} << 24;

using Point = std::array<double, kMaxDim>;
using Index = std::array<std::size_t, kMaxDim>;
using LatticeIndex = std::array<long long, kMaxDim>;

struct Interval {
  double lo;
  double hi;
};

class Grid {
public:
  int dim() const noexcept { return dim_; }
  double lower(int axis) const { return lo_[axis]; }
  double upper(int axis) const { return hi_[axis]; }
  double spacing(int axis) const { return h_[axis]; }
  std::size_t count(int axis) const { return n_[axis]; }
  const Index& counts() const noexcept { return n_; }

  std::size_t size() const noexcept { return size_; }
  double cell_volume() const noexcept;

  double midpoint(int axis, std::size_t i) const {
    return lo_[axis] + (static_cast<double>(i) + 0.5) * h_[axis];
  }
  Point midpoint(std::size_t flat) const;

  std::size_t flat(const Index& idx) const noexcept {
    return idx[0] + n_[0] * (idx[1] + n_[1] * idx[2]);
  }
  Index unflat(std::size_t flat) const noexcept;

  // Same box scaled by factor (bounds multiplied, counts kept). With a power
  // of two factor every midpoint maps exactly onto a midpoint.
  Grid scaled(double factor) const;

  bool operator==(const Grid& other) const noexcept;
  bool operator!=(const Grid& other) const noexcept { return !(*this == other); }

private:
  friend Grid make_grid(const std::vector<Interval>&, const std::vector<long long>&,
                        std::size_t);
  int dim_ = 0;
  Point lo_{};
  Point hi_{};
  Point h_{};
  Index n_{1, 1, 1};
  std::size_t size_ = 0;
};

Grid make_grid(const std::vector<Interval>& bounds, const std::vector<long long>& counts,
               std::size_t cell_budget = kDefaultCellBudget);

// One sample per cell, taken at the cell midpoint. Complex functions carry a
// second array; real functions leave it empty.
class GridFunction {
public:
  GridFunction(Grid grid, std::vector<double> re);
  GridFunction(Grid grid, std::vector<double> re, std::vector<double> im);

  static GridFunction zeros(const Grid& grid);

  const Grid& grid() const noexcept { return grid_; }
  bool is_complex() const noexcept { return !im_.empty(); }
  std::size_t size() const noexcept { return re_.size(); }

  const std::vector<double>& real() const noexcept { return re_; }
  const std::vector<double>& imag() const noexcept { return im_; }
  double real(std::size_t i) const { return re_[i]; }
  double imag(std::size_t i) const { return im_.empty() ? 0.0 : im_[i]; }
  std::complex<double> at(std::size_t i) const { return {re_[i], imag(i)}; }
  double abs(std::size_t i) const;
  std::vector<double> abs_values() const;
  double max_abs() const;

private:
  Grid grid_;
  std::vector<double> re_;
  std::vector<double> im_;
};

// Pointwise arithmetic. Binary operations require identical grids.
GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a, const GridFunction& b);
GridFunction operator*(const GridFunction& a, const GridFunction& b);
GridFunction operator*(double c, const GridFunction& f);
GridFunction operator*(std::complex<double> c, const GridFunction& f);
GridFunction abs(const GridFunction& f);
GridFunction real_part(const GridFunction& f);
GridFunction conj(const GridFunction& f);
void require_same_grid(const GridFunction& a, const GridFunction& b);

enum class WindowKind { Ball, Cube };

// Ball B(center, r), open; or cube r[k + [0,1)^n], half open.
struct WindowSpec {
  WindowKind kind = WindowKind::Ball;
  Point center{};
  double r = 1.0;
  LatticeIndex k{};

  static WindowSpec ball(const Point& center, double r);
  static WindowSpec cube(double side, const LatticeIndex& k);
};

// Half-open index box [lo, hi) per axis.
struct IndexBox {
  Index lo{};
  Index hi{};
  bool empty(int dim) const;
};

// Cells whose midpoint may fall in the open ball, clipped to the grid.
IndexBox ball_index_box(const Grid& grid, const Point& center, double r);
bool midpoint_in_ball(const Grid& grid, const Index& idx, const Point& center, double r);

GridFunction window_mask(const WindowSpec& w, const Grid& grid);
GridFunction restrict_to(const GridFunction& f, const WindowSpec& w);

// Multilinear interpolation between midpoints; clamps outside the midpoint hull.
std::complex<double> evaluate_at(const GridFunction& f, const Point& x);

// Builtin analytic fields. Parameters are numeric lists; scalars are lists of
// length one. See field_catalogue() for names.
struct FieldSpec {
  std::string name;
  std::map<std::string, std::vector<double>> params;

  double scalar(const std::string& key, double fallback) const;
  std::vector<double> vector(const std::string& key, const std::vector<double>& fallback) const;
  bool has(const std::string& key) const { return params.count(key) != 0; }
};

const std::vector<std::string>& field_catalogue();
GridFunction sample(const FieldSpec& spec, const Grid& grid);

// Convenience constructors for the catalogue.
FieldSpec constant_field(double value);
FieldSpec indicator_ball(const std::vector<double>& center, double radius);
FieldSpec indicator_box(const std::vector<double>& lower, const std::vector<double>& upper);
FieldSpec gaussian_field(const std::vector<double>& center, double sigma, double amplitude);
FieldSpec power_radial(double a);
FieldSpec log_abs();
FieldSpec random_bump_sum(unsigned long long seed);

}  // namespace amalgam
