#include "combopt/projection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace combopt {

namespace {

constexpr int kBisectionSteps = 200;
constexpr int kMaxCycles = 10000;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Capped dual-map coordinate: min(1, psi(g + theta)), with arguments at or
// past the dual boundary counting as saturated.
double capped_coord(const LegendreFunction& F, double g, double theta) {
  const double arg = g + theta;
  if (!(arg < F.dual_sup())) return 1.0;
  const double v = F.grad_star1(arg);
  return v < 1.0 ? v : 1.0;
}

double block_sum(const LegendreFunction& F, std::span<const double> g,
                 const std::vector<int>& idx, double theta) {
  double s = 0.0;
  for (int i : idx) s += capped_coord(F, g[i], theta);
  return s;
}

// Water-filling: find theta with sum_i min(1, psi(g_i + theta)) = target.
double solve_block_theta(const LegendreFunction& F, std::span<const double> g,
                         const std::vector<int>& idx, double target) {
  const double tol = 1e-13 * std::max(1.0, target);
  double lo = -1.0, hi = 1.0;
  int guard = 0;
  while (block_sum(F, g, idx, lo) > target) {
    lo *= 2.0;
    if (++guard > 200) throw std::runtime_error("projection: no lower bracket");
  }
  guard = 0;
  while (block_sum(F, g, idx, hi) < target) {
    hi *= 2.0;
    if (++guard > 200) throw std::runtime_error("projection: no upper bracket");
  }
  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < kBisectionSteps; ++it) {
    mid = 0.5 * (lo + hi);
    const double s = block_sum(F, g, idx, mid);
    if (std::abs(s - target) <= tol) return mid;
    if (s < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double residual = std::abs(block_sum(F, g, idx, mid) - target);
  if (residual > 1e-9 * std::max(1.0, target)) {
    std::ostringstream os;
    os << "projection bisection did not converge; residual=" << residual;
    throw std::runtime_error(os.str());
  }
  return mid;
}

// Two-interval segment x_up = lambda, x_down = 1 - lambda: first-order
// condition P (f'(lambda) - f'(1 - lambda)) = sum_up g - sum_down g,
// strictly increasing in lambda with infinite slopes at the ends.
double solve_segment_lambda(const LegendreFunction& F,
                            std::span<const double> g,
                            const ProjectionPlan::Segment& seg) {
  const double count = static_cast<double>(seg.up.size());
  double target = 0.0;
  for (int i : seg.up) target += g[i];
  for (int i : seg.down) target -= g[i];
  double lo = 1e-15, hi = 1.0 - 1e-15;
  for (int it = 0; it < kBisectionSteps; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double h = count * (F.grad1(mid) - F.grad1(1.0 - mid)) - target;
    if (h < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> water_fill(const LegendreFunction& F,
                               std::span<const double> g,
                               const ActionSet& set) {
  const auto& plan = set.projection_plan();
  std::vector<double> x(set.dim(), 0.0);
  for (const auto& block : plan.blocks) {
    const double size = static_cast<double>(block.idx.size());
    if (block.target > size + 1e-12) {
      throw std::runtime_error("projection: infeasible block target");
    }
    if (block.target >= size) {
      for (int i : block.idx) x[i] = 1.0;
      continue;
    }
    const double theta = solve_block_theta(F, g, block.idx, block.target);
    for (int i : block.idx) x[i] = capped_coord(F, g[i], theta);
  }
  if (plan.segment) {
    const double lambda = solve_segment_lambda(F, g, *plan.segment);
    for (int i : plan.segment->up) x[i] = lambda;
    for (int i : plan.segment->down) x[i] = 1.0 - lambda;
  }
  return x;
}

struct SparseRow {
  std::vector<int> idx;
  std::vector<double> coeff;
  double rhs = 0.0;
  bool equality = true;
};

// Hyperplane step of the cyclic solver: theta with
// sum_i a_i psi(u_i + theta a_i) = b, strictly increasing in theta within
// the dual-domain window.
double solve_hyperplane_theta(const LegendreFunction& F,
                              const std::vector<double>& u,
                              const SparseRow& row) {
  const double sup = F.dual_sup();
  double theta_lo_dom = -kInf, theta_hi_dom = kInf;
  if (std::isfinite(sup)) {
    for (std::size_t k = 0; k < row.idx.size(); ++k) {
      const double a = row.coeff[k];
      const double bound = (sup - u[k]) / a;
      if (a > 0.0) {
        theta_hi_dom = std::min(theta_hi_dom, bound);
      } else if (a < 0.0) {
        theta_lo_dom = std::max(theta_lo_dom, bound);
      }
    }
  }
  auto eval = [&](double theta) {
    double s = 0.0;
    for (std::size_t k = 0; k < row.idx.size(); ++k) {
      const double arg = u[k] + theta * row.coeff[k];
      const double xv = (arg < sup) ? F.grad_star1(arg) : 1e300;
      s += row.coeff[k] * xv;
    }
    return s;
  };

  double t0 = 0.0;
  if (!(t0 > theta_lo_dom && t0 < theta_hi_dom)) {
    if (std::isfinite(theta_lo_dom) && std::isfinite(theta_hi_dom)) {
      t0 = 0.5 * (theta_lo_dom + theta_hi_dom);
    } else if (std::isfinite(theta_hi_dom)) {
      t0 = theta_hi_dom - 1.0;
    } else {
      t0 = theta_lo_dom + 1.0;
    }
  }
  double lo = t0, hi = t0;
  int guard = 0;
  while (eval(hi) < row.rhs) {
    hi = std::isfinite(theta_hi_dom) ? 0.5 * (hi + theta_hi_dom)
                                     : (hi == t0 ? t0 + 1.0 : t0 + (hi - t0) * 2.0);
    if (++guard > 200) throw std::runtime_error("projection: no upper bracket");
  }
  guard = 0;
  while (eval(lo) > row.rhs) {
    lo = std::isfinite(theta_lo_dom) ? 0.5 * (lo + theta_lo_dom)
                                     : (lo == t0 ? t0 - 1.0 : t0 + (lo - t0) * 2.0);
    if (++guard > 200) throw std::runtime_error("projection: no lower bracket");
  }
  for (int it = 0; it < kBisectionSteps; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (eval(mid) < row.rhs) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Cyclic Bregman projections with Dykstra corrections. Corrections for a
// row a are multiples of a, so a scalar per row suffices.
std::vector<double> dykstra_project(const LegendreFunction& F,
                                    std::span<const double> x0,
                                    const ActionSet& set) {
  const int d = set.dim();
  std::vector<SparseRow> rows;
  for (const auto& r : set.conv_constraints().rows) {
    SparseRow s;
    for (int i = 0; i < d; ++i) {
      if (r.coeffs[i] != 0.0) {
        s.idx.push_back(i);
        s.coeff.push_back(r.coeffs[i]);
      }
    }
    s.rhs = r.rhs;
    s.equality = r.equality;
    rows.push_back(std::move(s));
  }
  for (int i = 0; i < d; ++i) {
    SparseRow cap;
    cap.idx.push_back(i);
    cap.coeff.push_back(1.0);
    cap.rhs = 1.0;
    cap.equality = false;
    rows.push_back(std::move(cap));
  }

  std::vector<double> x(x0.begin(), x0.end());
  std::vector<double> correction(rows.size(), 0.0);
  std::vector<double> u;
  std::vector<double> prev(x);
  for (int cycle = 0; cycle < kMaxCycles; ++cycle) {
    prev = x;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const SparseRow& row = rows[k];
      u.resize(row.idx.size());
      for (std::size_t j = 0; j < row.idx.size(); ++j) {
        u[j] = F.grad1(x[row.idx[j]]) + correction[k] * row.coeff[j];
      }
      double theta = 0.0;
      if (!row.equality) {
        double lhs = 0.0;
        for (std::size_t j = 0; j < row.idx.size(); ++j) {
          lhs += row.coeff[j] * ((u[j] < F.dual_sup()) ? F.grad_star1(u[j]) : 1e300);
        }
        if (lhs > row.rhs) theta = solve_hyperplane_theta(F, u, row);
      } else {
        theta = solve_hyperplane_theta(F, u, row);
      }
      for (std::size_t j = 0; j < row.idx.size(); ++j) {
        x[row.idx[j]] = F.grad_star1(u[j] + theta * row.coeff[j]);
      }
      correction[k] = -theta;
    }
    double move = 0.0;
    for (int i = 0; i < d; ++i) move = std::max(move, std::abs(x[i] - prev[i]));
    const double residual = set.conv_constraints().max_violation(x);
    if (residual <= 1e-10 && move <= 1e-12) return x;
  }
  std::ostringstream os;
  os << "cyclic projection did not converge after " << kMaxCycles
     << " cycles; residual=" << set.conv_constraints().max_violation(x);
  throw std::runtime_error(os.str());
}

std::vector<double> project_with_dual_offset(const LegendreFunction& F,
                                             std::span<const double> g,
                                             const ActionSet& set,
                                             const std::vector<double>* start) {
  if (set.projection_plan().water_fillable) return water_fill(F, g, set);
  if (start) return dykstra_project(F, *start, set);
  // No primal start supplied: shift g along the all-ones direction (which
  // is constant on the hull because every point sums to m) so that the
  // largest coordinate maps to 1, then enter the primal chart. Coordinates
  // that still underflow are lifted to a representable sliver.
  double gmax = -kInf;
  for (double gi : g) gmax = std::max(gmax, gi);
  const double anchor = F.family() == LegendreFunction::Family::Negentropy
                            ? 0.0
                            : -1.0;  // psi(anchor) = 1 for both families
  const double shift = gmax - anchor;
  std::vector<double> x0(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    x0[i] = std::max(F.grad_star1(g[i] - shift), 1e-300);
  }
  return dykstra_project(F, x0, set);
}

}  // namespace

std::vector<double> bregman_project(const LegendreFunction& F,
                                    std::span<const double> w,
                                    const ActionSet& set) {
  if (static_cast<int>(w.size()) != set.dim()) {
    throw std::invalid_argument("bregman_project: dimension mismatch");
  }
  for (double wi : w) {
    if (!(wi > 0.0) || !std::isfinite(wi)) {
      throw std::invalid_argument("bregman_project: w must be strictly interior");
    }
  }
  const std::vector<double> g = F.grad(w);
  const std::vector<double> start(w.begin(), w.end());
  return project_with_dual_offset(F, g, set, &start);
}

std::vector<double> bregman_project_dual(const LegendreFunction& F,
                                         std::span<const double> g,
                                         const ActionSet& set) {
  if (static_cast<int>(g.size()) != set.dim()) {
    throw std::invalid_argument("bregman_project_dual: dimension mismatch");
  }
  for (double gi : g) {
    if (!std::isfinite(gi)) {
      throw std::invalid_argument("bregman_project_dual: non-finite dual point");
    }
  }
  return project_with_dual_offset(F, g, set, nullptr);
}

std::vector<double> legendre_minimizer(const LegendreFunction& F,
                                       const ActionSet& set) {
  const std::vector<double> g(set.dim(), 0.0);
  return project_with_dual_offset(F, g, set, nullptr);
}

}  // namespace combopt
