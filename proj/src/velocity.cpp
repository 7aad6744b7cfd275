#include "hypara/velocity.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "hypara/errors.hpp"

namespace hypara {

namespace {

// w extended by rx, ry cells on each side according to the boundary policy.
struct Padded {
  int rx, ry, width;
  std::vector<double> data;

  double at(int p, int q) const { return data[static_cast<std::size_t>(q) * width + p]; }
  const double* row(int q) const { return data.data() + static_cast<std::size_t>(q) * width; }
};

Padded pad(const Field& w, int rx, int ry, const BoundaryExtension& boundary) {
  const int nx = w.nx(), ny = w.ny();
  Padded p{rx, ry, nx + 2 * rx, {}};
  p.data.assign(static_cast<std::size_t>(p.width) * (ny + 2 * ry), 0.0);
  const Field* ref = boundary.reference();
  assert(ref == nullptr || ref->grid() == w.grid());
  for (int q = 0; q < ny + 2 * ry; ++q) {
    const int j = q - ry;
    const bool j_in = j >= 0 && j < ny;
    double* out = p.data.data() + static_cast<std::size_t>(q) * p.width;
    for (int c = 0; c < p.width; ++c) {
      const int i = c - rx;
      const bool i_in = i >= 0 && i < nx;
      if (i_in && j_in) {
        out[c] = w(i, j);
      } else if (ref != nullptr) {
        out[c] = (*ref)(std::clamp(i, 0, nx - 1), std::clamp(j, 0, ny - 1));
      }
    }
  }
  return p;
}

}  // namespace

double VelocityField::max_speed() const {
  double m = 0;
  const auto x = vx.values(), y = vy.values();
  for (std::size_t k = 0; k < x.size(); ++k) m = std::max(m, std::hypot(x[k], y[k]));
  return m;
}

Field convolve(const Field& w, const Stencil& s, const BoundaryExtension& boundary) {
  const int nx = w.nx(), ny = w.ny();
  const Padded p = pad(w, s.rx, s.ry, boundary);
  Field out(w.grid());
  std::vector<double> acc(nx);

  // Terms are grouped in mirror quadruples (+-a, +-b) so the result is exactly
  // equivariant under grid reflections; every cell sees the same summation order.
  for (int j = 0; j < ny; ++j) {
    std::fill(acc.begin(), acc.end(), 0.0);
    for (int b = 0; b <= s.ry; ++b) {
      const double* lo_row = p.row(j - b + s.ry);  // w(., j - b)
      const double* hi_row = p.row(j + b + s.ry);  // w(., j + b)
      for (int a = 0; a <= s.rx; ++a) {
        const double s_pp = s.weight(a, b), s_mp = s.weight(-a, b);
        const double s_pm = s.weight(a, -b), s_mm = s.weight(-a, -b);
        if (s_pp == 0 && s_mp == 0 && s_pm == 0 && s_mm == 0) continue;
        // w(i - a, .) is padded column i - a + rx.
        const double* lo_l = lo_row + s.rx - a;
        const double* lo_r = lo_row + s.rx + a;
        const double* hi_l = hi_row + s.rx - a;
        const double* hi_r = hi_row + s.rx + a;
        if (a == 0 && b == 0) {
          for (int i = 0; i < nx; ++i) acc[i] += s_pp * lo_l[i];
        } else if (b == 0) {
          for (int i = 0; i < nx; ++i) acc[i] += s_pp * lo_l[i] + s_mp * lo_r[i];
        } else if (a == 0) {
          for (int i = 0; i < nx; ++i) acc[i] += s_pp * lo_l[i] + s_pm * hi_l[i];
        } else {
          for (int i = 0; i < nx; ++i) {
            acc[i] += (s_pp * lo_l[i] + s_mp * lo_r[i]) + (s_pm * hi_l[i] + s_mm * hi_r[i]);
          }
        }
      }
    }
    for (int i = 0; i < nx; ++i) out(i, j) = acc[i];
  }
  return out;
}

VelocityField nonlocal_velocity(const Field& w, const KernelTable& table, double kappa,
                                const BoundaryExtension& boundary) {
  assert(w.grid() == table.grid());
  VelocityField v{convolve(w, table.grad_x(), boundary), convolve(w, table.grad_y(), boundary),
                  kappa};
  auto vx = v.vx.values();
  auto vy = v.vy.values();
  for (std::size_t k = 0; k < vx.size(); ++k) {
    const double gx = vx[k], gy = vy[k];
    const double scale = kappa / std::sqrt(1.0 + gx * gx + gy * gy);
    vx[k] = scale * gx;
    vy[k] = scale * gy;
  }
  return v;
}

double max_jacobian_norm(const VelocityField& v) {
  const GridSpec& g = v.vx.grid();
  const double hx = 2 * g.dx(), hy = 2 * g.dy();
  double worst = 0;
  for (int j = 1; j + 1 < g.ny(); ++j) {
    for (int i = 1; i + 1 < g.nx(); ++i) {
      const double a = (v.vx(i + 1, j) - v.vx(i - 1, j)) / hx;
      const double b = (v.vx(i, j + 1) - v.vx(i, j - 1)) / hy;
      const double c = (v.vy(i + 1, j) - v.vy(i - 1, j)) / hx;
      const double d = (v.vy(i, j + 1) - v.vy(i, j - 1)) / hy;
      // largest singular value of [[a, b], [c, d]]
      const double sigma = 0.5 * (std::hypot(a + d, c - b) + std::hypot(a - d, b + c));
      worst = std::max(worst, sigma);
    }
  }
  return worst;
}

Field divergence(const VelocityField& v) {
  const GridSpec& g = v.vx.grid();
  Field div(g);
  for (int j = 1; j + 1 < g.ny(); ++j) {
    for (int i = 1; i + 1 < g.nx(); ++i) {
      div(i, j) = (v.vx(i + 1, j) - v.vx(i - 1, j)) / (2 * g.dx()) +
                  (v.vy(i, j + 1) - v.vy(i, j - 1)) / (2 * g.dy());
    }
  }
  return div;
}

double l1_grad_divergence(const VelocityField& v) {
  const Field div = divergence(v);
  const GridSpec& g = div.grid();
  double sum = 0;
  for (int j = 2; j + 2 < g.ny(); ++j) {
    for (int i = 2; i + 2 < g.nx(); ++i) {
      const double gx = (div(i + 1, j) - div(i - 1, j)) / (2 * g.dx());
      const double gy = (div(i, j + 1) - div(i, j - 1)) / (2 * g.dy());
      sum += std::hypot(gx, gy);
    }
  }
  return sum * g.cell_area();
}

double max_difference(const VelocityField& a, const VelocityField& b) {
  double m = 0;
  const auto ax = a.vx.values(), ay = a.vy.values(), bx = b.vx.values(), by = b.vy.values();
  for (std::size_t k = 0; k < ax.size(); ++k) {
    m = std::max(m, std::hypot(ax[k] - bx[k], ay[k] - by[k]));
  }
  return m;
}

bool VAuditReport::passed() const {
  return std::all_of(worst_ratio.begin(), worst_ratio.end(),
                     [&](double r) { return r <= 1.0 + tolerance; });
}

namespace {

class FieldGenerator {
 public:
  FieldGenerator(const GridSpec& g, int margin_x, int margin_y, std::uint64_t seed)
      : g_(g), mx_(margin_x), my_(margin_y), rng_(seed) {}

  Field next() {
    std::uniform_int_distribution<int> kind(0, 3);
    Field f(g_);
    switch (kind(rng_)) {
      case 0: noise_box(f); break;
      case 1: bumps(f); break;
      case 2: spike(f); break;
      default: disc(f); break;
    }
    // Log-uniform amplitude over six decades, probing both the linear and the
    // saturated regime of the velocity map.
    f *= std::pow(10.0, uniform(-3.0, 3.0));
    return f;
  }

  Field perturb(const Field& base) {
    Field f = base;
    Field extra = next();
    f += uniform(1e-4, 1.0) * extra;
    return f;
  }

 private:
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }
  int cell_x() { return std::uniform_int_distribution<int>(mx_, g_.nx() - 1 - mx_)(rng_); }
  int cell_y() { return std::uniform_int_distribution<int>(my_, g_.ny() - 1 - my_)(rng_); }
  bool inside(int i, int j) const {
    return i >= mx_ && i <= g_.nx() - 1 - mx_ && j >= my_ && j <= g_.ny() - 1 - my_;
  }

  void noise_box(Field& f) {
    int i0 = cell_x(), i1 = cell_x(), j0 = cell_y(), j1 = cell_y();
    if (i0 > i1) std::swap(i0, i1);
    if (j0 > j1) std::swap(j0, j1);
    for (int j = j0; j <= j1; ++j)
      for (int i = i0; i <= i1; ++i) f(i, j) = uniform(0.0, 1.0);
  }

  void bumps(Field& f) {
    const int count = std::uniform_int_distribution<int>(1, 5)(rng_);
    for (int n = 0; n < count; ++n) {
      const double cx = g_.xc(cell_x()), cy = g_.yc(cell_y());
      const double sigma = uniform(2 * g_.dx(), 0.3);
      const double amp = uniform(0.0, 1.0);
      for (int j = my_; j <= g_.ny() - 1 - my_; ++j) {
        for (int i = mx_; i <= g_.nx() - 1 - mx_; ++i) {
          const double dx = g_.xc(i) - cx, dy = g_.yc(j) - cy;
          f(i, j) += amp * std::exp(-(dx * dx + dy * dy) / (2 * sigma * sigma));
        }
      }
    }
  }

  void spike(Field& f) { f(cell_x(), cell_y()) = 1.0 / g_.cell_area(); }

  void disc(Field& f) {
    const int ci = cell_x(), cj = cell_y();
    const double radius = uniform(g_.dx(), 0.5);
    const double height = uniform(0.1, 1.0);
    for (int j = 0; j < g_.ny(); ++j) {
      for (int i = 0; i < g_.nx(); ++i) {
        if (!inside(i, j)) continue;
        if (std::hypot(g_.xc(i) - g_.xc(ci), g_.yc(j) - g_.yc(cj)) <= radius) f(i, j) = height;
      }
    }
  }

  GridSpec g_;
  int mx_, my_;
  std::mt19937_64 rng_;
};

double ratio(double lhs, double rhs) {
  if (rhs > 0) return lhs / rhs;
  return lhs == 0 ? 0.0 : std::numeric_limits<double>::infinity();
}

}  // namespace

VAuditReport audit_v_condition(const KernelTable& table, const KernelNorms& norms, int trials,
                               std::uint64_t rng_seed, double tolerance) {
  const GridSpec& g = table.grid();
  const int mx = table.radius_x() + 3, my = table.radius_y() + 3;
  if (g.nx() <= 2 * mx || g.ny() <= 2 * my) {
    throw InvalidParameter("grid too small to host audit fields away from the boundary");
  }
  if (trials < 1) throw InvalidParameter("audit needs at least one trial");

  VAuditReport report;
  report.tolerance = tolerance;
  report.K = norms.K;
  const double K = norms.K;
  const auto zero_ext = BoundaryExtension::zero();
  FieldGenerator gen(g, mx, my, rng_seed);
  std::bernoulli_distribution coin(0.5);
  std::mt19937_64 pair_rng(rng_seed ^ 0x9e3779b97f4a7c15ULL);

  auto note = [&](VInequality which, double r) {
    double& slot = report.worst_ratio[static_cast<int>(which)];
    slot = std::max(slot, r);
  };

  for (int trial = 0; trial < trials; ++trial) {
    Field w1 = trial == 0 ? Field(g) : gen.next();
    Field w2 = w1;
    if (trial % 3 == 1) {
      w2 = gen.perturb(w1);
    } else if (trial % 3 == 2) {
      w2 = gen.next();
    }
    if (coin(pair_rng)) std::swap(w1, w2);

    const VelocityField v1 = nonlocal_velocity(w1, table, norms.kappa, zero_ext);
    const VelocityField v2 = nonlocal_velocity(w2, table, norms.kappa, zero_ext);

    for (const auto* pair : {&w1, &w2}) {
      const Field& w = *pair;
      const VelocityField& v = (pair == &w1) ? v1 : v2;
      const double mass = l1_norm(w);
      note(VInequality::kSpeedByMass, ratio(v.max_speed(), K * mass));
      note(VInequality::kJacobianBySup, ratio(max_jacobian_norm(v), K * linf_norm(w)));
      note(VInequality::kGradDivByMass, ratio(l1_grad_divergence(v), norms.C_of(mass) * mass));
    }

    const double dist = l1_norm(w1 - w2);
    note(VInequality::kLipschitzL1, ratio(max_difference(v1, v2), K * dist));
    VelocityField dv{v1.vx - v2.vx, v1.vy - v2.vy, norms.kappa};
    note(VInequality::kDivLipschitz,
         ratio(l1_norm(divergence(dv)), norms.C_of(linf_norm(w2)) * dist));
  }
  report.trials = trials;
  return report;
}

}  // namespace hypara
