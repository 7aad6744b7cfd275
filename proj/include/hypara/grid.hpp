#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace hypara {

// Uniform cell-centered grid on [x_min, x_max] x [y_min, y_max].
// Cell (i, j) has its center at (x_min + (i + 1/2) dx, y_min + (j + 1/2) dy).
class GridSpec {
 public:
  GridSpec() = default;

  // Throws InvalidParameter unless nx, ny >= 3 and the extents are increasing.
  GridSpec(double x_min, double x_max, double y_min, double y_max, int nx, int ny);

  // nx, ny chosen as the nearest integers to the extents divided by h.
  static GridSpec with_spacing(double x_min, double x_max, double y_min, double y_max,
                               double h);

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  double y_min() const { return y_min_; }
  double y_max() const { return y_max_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double dx() const { return dx_; }
  double dy() const { return dy_; }
  double cell_area() const { return dx_ * dy_; }
  std::size_t size() const { return static_cast<std::size_t>(nx_) * ny_; }

  double xc(int i) const { return x_min_ + (i + 0.5) * dx_; }
  double yc(int j) const { return y_min_ + (j + 0.5) * dy_; }

  // Row-major: rows run along x, one row per y index.
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * nx_ + i;
  }

  bool operator==(const GridSpec&) const = default;

 private:
  double x_min_ = 0, x_max_ = 1, y_min_ = 0, y_max_ = 1;
  int nx_ = 3, ny_ = 3;
  double dx_ = 1.0 / 3, dy_ = 1.0 / 3;
};

// Scalar samples at the cell centers of a grid.
class Field {
 public:
  Field() = default;
  explicit Field(const GridSpec& grid, double value = 0.0)
      : grid_(grid), values_(grid.size(), value) {}
  Field(const GridSpec& grid, std::vector<double> values);

  // Samples fn(x, y) at every cell center.
  static Field sample(const GridSpec& grid, const std::function<double(double, double)>& fn);

  const GridSpec& grid() const { return grid_; }
  int nx() const { return grid_.nx(); }
  int ny() const { return grid_.ny(); }
  std::size_t size() const { return values_.size(); }

  double& operator()(int i, int j) { return values_[grid_.index(i, j)]; }
  double operator()(int i, int j) const { return values_[grid_.index(i, j)]; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  bool all_finite() const;
  double min() const;
  double max() const;

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(double s);

  friend Field operator+(Field a, const Field& b) { return a += b; }
  friend Field operator-(Field a, const Field& b) { return a -= b; }
  friend Field operator*(double s, Field a) { return a *= s; }

  // Bitwise value equality on the same grid.
  bool operator==(const Field& other) const;

 private:
  GridSpec grid_;
  std::vector<double> values_;
};

// Sum of |f| times the cell area.
double l1_norm(const Field& f);

double linf_norm(const Field& f);

// Anisotropic discrete total variation: dy * sum |f(i+1,j) - f(i,j)| + dx * sum |f(i,j+1) - f(i,j)|.
double total_variation(const Field& f);

// Largest distance from the origin of a cell center where |f| > threshold; 0 if none.
double support_radius(const Field& f, double threshold);

// Same, with threshold 1e-12 * linf_norm(f).
double support_radius(const Field& f);

// Sum of f (signed) times the cell area.
double integral(const Field& f);

}  // namespace hypara
