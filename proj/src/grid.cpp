#include "hypara/grid.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstring>
#include <string>

#include "hypara/errors.hpp"

namespace hypara {

GridSpec::GridSpec(double x_min, double x_max, double y_min, double y_max, int nx, int ny)
    : x_min_(x_min), x_max_(x_max), y_min_(y_min), y_max_(y_max), nx_(nx), ny_(ny) {
  if (nx < 3 || ny < 3) {
    throw InvalidParameter("grid needs at least 3 cells per axis, got " + std::to_string(nx) +
                           "x" + std::to_string(ny));
  }
  if (!(x_max > x_min) || !(y_max > y_min) || !std::isfinite(x_max - x_min) ||
      !std::isfinite(y_max - y_min)) {
    throw InvalidParameter("grid extents must be finite and increasing");
  }
  dx_ = (x_max - x_min) / nx;
  dy_ = (y_max - y_min) / ny;
}

GridSpec GridSpec::with_spacing(double x_min, double x_max, double y_min, double y_max,
                                double h) {
  if (!(h > 0) || !std::isfinite(h)) throw InvalidParameter("mesh spacing must be positive");
  const double nx = std::round((x_max - x_min) / h);
  const double ny = std::round((y_max - y_min) / h);
  if (nx > 1e8 || ny > 1e8) throw InvalidParameter("mesh spacing too small for the domain");
  return GridSpec(x_min, x_max, y_min, y_max, static_cast<int>(nx), static_cast<int>(ny));
}

Field::Field(const GridSpec& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw InvalidParameter("field has " + std::to_string(values_.size()) +
                           " values, grid needs " + std::to_string(grid_.size()));
  }
}

Field Field::sample(const GridSpec& grid, const std::function<double(double, double)>& fn) {
  Field f(grid);
  for (int j = 0; j < grid.ny(); ++j) {
    const double y = grid.yc(j);
    for (int i = 0; i < grid.nx(); ++i) f(i, j) = fn(grid.xc(i), y);
  }
  return f;
}

bool Field::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

double Field::min() const { return *std::min_element(values_.begin(), values_.end()); }
double Field::max() const { return *std::max_element(values_.begin(), values_.end()); }

Field& Field::operator+=(const Field& other) {
  assert(grid_ == other.grid_);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
  return *this;
}

Field& Field::operator-=(const Field& other) {
  assert(grid_ == other.grid_);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= other.values_[k];
  return *this;
}

Field& Field::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

bool Field::operator==(const Field& other) const {
  return grid_ == other.grid_ && values_.size() == other.values_.size() &&
         std::memcmp(values_.data(), other.values_.data(), values_.size() * sizeof(double)) == 0;
}

double l1_norm(const Field& f) {
  assert(f.all_finite());
  double sum = 0;
  for (double v : f.values()) sum += std::abs(v);
  return sum * f.grid().cell_area();
}

double linf_norm(const Field& f) {
  assert(f.all_finite());
  double m = 0;
  for (double v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

double integral(const Field& f) {
  double sum = 0;
  for (double v : f.values()) sum += v;
  return sum * f.grid().cell_area();
}

double total_variation(const Field& f) {
  const int nx = f.nx(), ny = f.ny();
  double jumps_x = 0, jumps_y = 0;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i + 1 < nx; ++i) jumps_x += std::abs(f(i + 1, j) - f(i, j));
  }
  for (int j = 0; j + 1 < ny; ++j) {
    for (int i = 0; i < nx; ++i) jumps_y += std::abs(f(i, j + 1) - f(i, j));
  }
  return f.grid().dy() * jumps_x + f.grid().dx() * jumps_y;
}

double support_radius(const Field& f, double threshold) {
  const GridSpec& g = f.grid();
  double r2 = 0;
  for (int j = 0; j < g.ny(); ++j) {
    const double y = g.yc(j);
    for (int i = 0; i < g.nx(); ++i) {
      if (std::abs(f(i, j)) > threshold) {
        const double x = g.xc(i);
        r2 = std::max(r2, x * x + y * y);
      }
    }
  }
  return std::sqrt(r2);
}

double support_radius(const Field& f) { return support_radius(f, 1e-12 * linf_norm(f)); }

}  // namespace hypara
