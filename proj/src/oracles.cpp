#include "combopt/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "combopt/environments.hpp"
#include "combopt/harness.hpp"
#include "combopt/numeric.hpp"
#include "combopt/projection.hpp"
#include "combopt/rng.hpp"

namespace combopt {

std::vector<double> exact_estimator_mean_semi(const VertexDistribution& p,
                                              std::span<const double> x,
                                              std::span<const double> z) {
  std::vector<double> mean(x.size(), 0.0);
  for (std::size_t k = 0; k < p.atoms.size(); ++k) {
    const Feedback fb = observe(FeedbackMode::SemiBandit, p.atoms[k], z);
    const std::vector<double> est =
        estimate_semi_bandit(x, p.atoms[k], fb.values);
    for (std::size_t i = 0; i < mean.size(); ++i) {
      mean[i] += p.probs[k] * est[i];
    }
  }
  return mean;
}

std::vector<double> exact_estimator_mean_exp2(const Exp2Player& player,
                                              const ActionSet& set,
                                              std::span<const double> z) {
  const std::vector<double> probs = player.sampling_distribution();
  const auto& verts = set.vertices();
  std::vector<double> mean(set.dim(), 0.0);
  for (std::size_t k = 0; k < verts.size(); ++k) {
    const Feedback fb = observe(player.feedback_mode(), verts[k], z);
    const std::vector<double> est = player.estimate(verts[k], fb);
    for (int i = 0; i < set.dim(); ++i) mean[i] += probs[k] * est[i];
  }
  return mean;
}

std::vector<double> brute_force_projection(const LegendreFunction& F,
                                           std::span<const double> w,
                                           const ActionSet& set,
                                           double resolution) {
  if (set.kind() != SetKind::MSet) {
    throw std::invalid_argument(
        "brute_force_projection: grid oracle only covers m-sets");
  }
  const int d = set.dim();
  const int m = set.weight();
  if (d > 3) throw std::invalid_argument("brute_force_projection: d too large");
  if (static_cast<int>(w.size()) != d) {
    throw std::invalid_argument("brute_force_projection: dimension mismatch");
  }
  const long J = std::lround(1.0 / resolution);
  if (J < 1) throw std::invalid_argument("brute_force_projection: bad resolution");

  // Per-coordinate divergence tables over the shared grid.
  std::vector<std::vector<double>> table(d, std::vector<double>(J + 1));
  for (int i = 0; i < d; ++i) {
    const double fw = F.value1(w[i]);
    const double gw = F.grad1(w[i]);
    for (long j = 0; j <= J; ++j) {
      const double g = static_cast<double>(j) / static_cast<double>(J);
      table[i][j] = F.value1(g) - fw - (g - w[i]) * gw;
    }
  }

  double best = std::numeric_limits<double>::infinity();
  std::vector<long> best_idx(d, 0);
  if (d == 1) {
    best = table[0][J * m];
    best_idx[0] = J * m;
  } else if (d == 2) {
    for (long a = 0; a <= J; ++a) {
      const long b = J * m - a;
      if (b < 0 || b > J) continue;
      const double v = table[0][a] + table[1][b];
      if (v < best) {
        best = v;
        best_idx = {a, b};
      }
    }
  } else {
    for (long a = 0; a <= J; ++a) {
      for (long b = 0; b <= J; ++b) {
        const long c = J * m - a - b;
        if (c < 0 || c > J) continue;
        const double v = table[0][a] + table[1][b] + table[2][c];
        if (v < best) {
          best = v;
          best_idx = {a, b, c};
        }
      }
    }
  }
  std::vector<double> x(d);
  for (int i = 0; i < d; ++i) {
    x[i] = static_cast<double>(best_idx[i]) / static_cast<double>(J);
  }
  return x;
}

double exp2_alternating_regret(int d, long n, double eta) {
  if (d < 4 || d % 4 != 0) {
    throw std::invalid_argument("alternating regret: d must be a multiple of 4");
  }
  if (n < 2 || n % 2 != 0) {
    throw std::invalid_argument("alternating regret: n must be even");
  }
  if (!(eta >= 0.0)) throw std::invalid_argument("alternating regret: eta >= 0");
  return (static_cast<double>(n) * d / 16.0) * std::tanh(eta * d / 8.0);
}

double exp2_epsskew_regret(int d, long n, double eta, double eps) {
  if (d < 4 || d % 4 != 0) {
    throw std::invalid_argument("epsskew regret: d must be a multiple of 4");
  }
  if (n < 1) throw std::invalid_argument("epsskew regret: n >= 1");
  if (!(eps > 0.0 && eps <= 1.0)) {
    throw std::invalid_argument("epsskew regret: eps in (0, 1]");
  }
  if (!(eta >= 0.0)) throw std::invalid_argument("epsskew regret: eta >= 0");
  const int k = d / 4;
  const double growth = eta * static_cast<double>(n) * eps;
  std::vector<double> num_logs, den_logs;
  num_logs.reserve(k);
  den_logs.reserve(k + 1);
  for (int i = 0; i <= k; ++i) {
    const double base = 2.0 * log_binom(k, i) + growth * i;
    den_logs.push_back(base);
    if (i < k) {
      num_logs.push_back(std::log1p(-static_cast<double>(i) / k) + base);
    }
  }
  const double ratio = std::exp(log_sum_exp(num_logs) - log_sum_exp(den_logs));
  return (static_cast<double>(n) * eps * d / 4.0) * ratio;
}

double epsskew_min_bound(int d, long n, double eta) {
  if (!(eta > 0.0)) throw std::invalid_argument("epsskew bound: eta > 0");
  const double nd = static_cast<double>(n) * d;
  return std::min(d * std::log(2.0) / (12.0 * eta), nd / 12.0);
}

double tech1_ratio(int k, double c) {
  if (k < 1) throw std::invalid_argument("tech1_ratio: k >= 1");
  if (!(c >= 1.0 && c <= 2.0)) {
    throw std::invalid_argument("tech1_ratio: c must lie in [1, 2]");
  }
  const double logc = std::log(c);
  std::vector<double> num_logs, den_logs;
  num_logs.reserve(k);
  den_logs.reserve(k + 1);
  for (int i = 0; i <= k; ++i) {
    const double base = 2.0 * log_binom(k, i) + logc * i;
    den_logs.push_back(base);
    if (i < k) {
      num_logs.push_back(std::log1p(-static_cast<double>(i) / k) + base);
    }
  }
  return std::exp(log_sum_exp(num_logs) - log_sum_exp(den_logs));
}

std::vector<double> poisson_binomial(std::span<const double> means) {
  for (double p : means) {
    if (!(p > 0.0 && p < 1.0)) {
      throw std::invalid_argument("poisson_binomial: means must lie in (0, 1)");
    }
  }
  std::vector<double> pmf{1.0};
  for (double p : means) {
    std::vector<double> next(pmf.size() + 1, 0.0);
    for (std::size_t k = 0; k < pmf.size(); ++k) {
      next[k] += pmf[k] * (1.0 - p);
      next[k + 1] += pmf[k] * p;
    }
    pmf = std::move(next);
  }
  return pmf;
}

double kl_divergence(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) {
    throw std::invalid_argument("kl_divergence: size mismatch");
  }
  double kl = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] == 0.0) continue;
    if (q[k] <= 0.0) {
      throw std::invalid_argument("kl_divergence: q vanishes where p does not");
    }
    kl += p[k] * std::log(p[k] / q[k]);
  }
  return kl;
}

KlBoundResult kl_bound_check(double p, double pprime, double q, int n, int ell,
                             double tail) {
  for (double v : {p, pprime, q, tail}) {
    if (!(v > 0.0 && v < 1.0)) {
      throw std::invalid_argument("kl_bound_check: parameters must lie in (0, 1)");
    }
  }
  if (q != p && q != pprime) {
    throw std::invalid_argument("kl_bound_check: q must equal p or p'");
  }
  if (!(ell >= 1 && 2 * ell >= n && ell <= n)) {
    throw std::invalid_argument("kl_bound_check: needs n/2 <= ell <= n");
  }
  std::vector<double> means_b{p}, means_bp{pprime};
  for (int i = 0; i < ell; ++i) {
    means_b.push_back(q);
    means_bp.push_back(q);
  }
  for (int i = ell; i < n; ++i) {
    means_b.push_back(tail);
    means_bp.push_back(tail);
  }
  const std::vector<double> pmf_b = poisson_binomial(means_b);
  const std::vector<double> pmf_bp = poisson_binomial(means_bp);
  KlBoundResult out;
  out.kl = kl_divergence(pmf_b, pmf_bp);
  const double diff = pprime - p;
  out.bound = 2.0 * diff * diff / ((1.0 - pprime) * (n + 2) * q);
  return out;
}

LogBoundResult log_quadratic_bound(double x, double x0) {
  if (!(x0 > 0.0 && x0 < 1.0)) {
    throw std::invalid_argument("log_quadratic_bound: x0 in (0, 1)");
  }
  if (!(x >= x0)) throw std::invalid_argument("log_quadratic_bound: x >= x0");
  LogBoundResult out;
  out.lhs = -std::log(x);
  out.rhs = -(x - 1.0) + (x - 1.0) * (x - 1.0) / (2.0 * x0);
  return out;
}

double minimax_lower_reference(int m, int d, long n) {
  if (m < 1 || d < 2 * m || n < d) {
    throw std::invalid_argument("minimax reference: needs n >= d >= 2m >= 2");
  }
  return 0.02 * m * std::sqrt(static_cast<double>(d) * static_cast<double>(n));
}

// ---------------------------------------------------------------------------
// Verification suite
// ---------------------------------------------------------------------------

namespace {

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

CheckResult make_result(const std::string& name, bool passed,
                        const std::string& detail) {
  return CheckResult{name, passed, detail};
}

std::vector<LegendreFunction> test_families(int dim) {
  std::vector<LegendreFunction> fams;
  fams.push_back(LegendreFunction::negentropy(dim));
  for (double q : {1.5, 2.0, 3.0}) {
    fams.push_back(LegendreFunction::power_potential(q, dim));
  }
  return fams;
}

std::vector<double> random_point(RngStream& rng, int dim, double lo, double hi) {
  std::vector<double> x(dim);
  for (double& xi : x) xi = rng.uniform(lo, hi);
  return x;
}

// Random strict convex combination of vertices; interior of the hull.
std::vector<double> random_hull_point(const ActionSet& set, RngStream& rng) {
  const auto& verts = set.vertices();
  std::vector<double> lambda(verts.size());
  double sum = 0.0;
  for (double& l : lambda) {
    l = -std::log(1.0 - rng.uniform());
    sum += l;
  }
  std::vector<double> x(set.dim(), 0.0);
  for (std::size_t k = 0; k < verts.size(); ++k) {
    const double wgt = lambda[k] / sum;
    for (int i = 0; i < set.dim(); ++i) {
      if (verts[k].bits[i]) x[i] += wgt;
    }
  }
  return x;
}

CheckResult check_bregman_duality() {
  RngStream rng(101, 0);
  double worst = 0.0;
  for (const auto& F : test_families(5)) {
    for (int it = 0; it < 1000; ++it) {
      const auto x = random_point(rng, 5, 0.05, 3.0);
      const auto y = random_point(rng, 5, 0.05, 3.0);
      const double primal = bregman(F, x, y);
      const double dual = dual_bregman(F, F.grad(y), F.grad(x));
      worst = std::max(worst, std::abs(primal - dual) / (1.0 + std::abs(primal)));
    }
  }
  return make_result("bregman-duality", worst <= 1e-8, "max rel err " + fmt(worst));
}

CheckResult check_inverse_map() {
  RngStream rng(102, 0);
  double worst = 0.0;
  for (const auto& F : test_families(4)) {
    for (int it = 0; it < 1000; ++it) {
      const auto x = random_point(rng, 4, 0.02, 5.0);
      const auto back = F.grad_star(F.grad(x));
      for (int i = 0; i < 4; ++i) {
        worst = std::max(worst, std::abs(back[i] - x[i]));
      }
    }
  }
  return make_result("inverse-map-identity", worst <= 1e-9, "max err " + fmt(worst));
}

CheckResult check_negentropy_closed_form() {
  RngStream rng(103, 0);
  const auto F = LegendreFunction::negentropy(6);
  double worst = 0.0;
  for (int it = 0; it < 1000; ++it) {
    const auto u = random_point(rng, 6, -3.0, 2.0);
    const auto v = random_point(rng, 6, -3.0, 2.0);
    worst = std::max(worst, std::abs(dual_bregman(F, u, v) -
                                     dual_bregman_negentropy_closed_form(u, v)));
  }
  return make_result("negentropy-dual-closed-form", worst <= 1e-10,
                     "max err " + fmt(worst));
}

CheckResult check_gradient_fd() {
  RngStream rng(104, 0);
  double worst = 0.0;
  const double h = 1e-6;
  for (const auto& F : test_families(1)) {
    for (int it = 0; it < 300; ++it) {
      const double x = rng.uniform(0.05, 4.0);
      const double fd = (F.value1(x + h) - F.value1(x - h)) / (2.0 * h);
      const double g = F.grad1(x);
      worst = std::max(worst, std::abs(fd - g) / (1.0 + std::abs(g)));
    }
  }
  return make_result("gradient-finite-difference", worst <= 1e-5,
                     "max rel err " + fmt(worst));
}

CheckResult check_psi_quadratic() {
  RngStream rng(105, 0);
  double worst_gap = 0.0;
  for (double q : {1.5, 2.0, 3.0}) {
    const auto F = LegendreFunction::power_potential(q, 3);
    for (int it = 0; it < 10000; ++it) {
      std::vector<double> v = random_point(rng, 3, -4.0, -0.1);
      std::vector<double> u(3);
      for (int i = 0; i < 3; ++i) u[i] = v[i] - rng.uniform(0.0, 2.0);
      const auto [lhs, rhs] = psi_quadratic_bound(F, u, v);
      worst_gap = std::max(worst_gap, lhs - rhs);
    }
  }
  return make_result("psi-quadratic-bound", worst_gap <= 1e-12,
                     "max lhs-rhs " + fmt(worst_gap));
}

CheckResult check_estimator_mean_semi() {
  RngStream rng(106, 0);
  double worst = 0.0;
  const std::vector<ActionSet> sets = {ActionSet::mset(6, 2),
                                       ActionSet::parallel_games(6, 2),
                                       ActionSet::exp2_lower_bound(8)};
  for (const auto& set : sets) {
    for (int rep = 0; rep < 20; ++rep) {
      const auto x = random_hull_point(set, rng);
      const auto z = random_point(rng, set.dim(), 0.0, 1.0);
      const auto p = decompose(set, x);
      const auto mean = exact_estimator_mean_semi(p, x, z);
      for (int i = 0; i < set.dim(); ++i) {
        worst = std::max(worst, std::abs(mean[i] - z[i]));
      }
    }
  }
  return make_result("estimator-mean-osmd-semi", worst <= 1e-12,
                     "max coord err " + fmt(worst));
}

CheckResult check_estimator_mean_exp2_semi() {
  RngStream rng(107, 0);
  double worst = 0.0;
  const std::vector<ActionSet> sets = {ActionSet::mset(6, 2),
                                       ActionSet::parallel_games(6, 2),
                                       ActionSet::exp2_lower_bound(8)};
  for (const auto& set : sets) {
    Exp2Player player(set, 0.7, 0.0, FeedbackMode::SemiBandit);
    for (int rep = 0; rep < 20; ++rep) {
      const auto z = random_point(rng, set.dim(), 0.0, 1.0);
      const auto mean = exact_estimator_mean_exp2(player, set, z);
      for (int i = 0; i < set.dim(); ++i) {
        worst = std::max(worst, std::abs(mean[i] - z[i]));
      }
      // Walk the weights somewhere non-uniform before the next repeat.
      const ActionVector a = player.act(rng);
      player.learn(a, observe(FeedbackMode::SemiBandit, a, z));
    }
  }
  return make_result("estimator-mean-exp2-semi", worst <= 1e-12,
                     "max coord err " + fmt(worst));
}

CheckResult check_estimator_mean_exp2_bandit() {
  RngStream rng(108, 0);
  const auto set = ActionSet::mset(4, 1);
  Exp2Player player(set, 0.5, 0.2, FeedbackMode::Bandit);
  double worst = 0.0;
  for (int rep = 0; rep < 20; ++rep) {
    const auto z = random_point(rng, set.dim(), 0.0, 1.0);
    const auto mean = exact_estimator_mean_exp2(player, set, z);
    for (int i = 0; i < set.dim(); ++i) {
      worst = std::max(worst, std::abs(mean[i] - z[i]));
    }
    const ActionVector a = player.act(rng);
    player.learn(a, observe(FeedbackMode::Bandit, a, z));
  }
  return make_result("estimator-mean-exp2-bandit", worst <= 1e-9,
                     "max coord err " + fmt(worst));
}

struct ProjectionSweep {
  double worst_grid_gap = 0.0;
  double worst_pythagoras = 0.0;  // most negative slack
  double worst_optimality = 0.0;  // most positive D(x*,w) - D(y,w)
};

ProjectionSweep projection_sweep() {
  RngStream rng(109, 0);
  ProjectionSweep sweep;
  const std::vector<ActionSet> sets = {ActionSet::mset(2, 1),
                                       ActionSet::mset(3, 2)};
  for (const auto& set : sets) {
    for (const auto& F : {LegendreFunction::negentropy(set.dim()),
                          LegendreFunction::power_potential(2.0, set.dim())}) {
      for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> w(set.dim());
        for (double& wi : w) wi = std::exp(rng.uniform(-1.5, 1.5));
        const auto x = bregman_project(F, w, set);
        const auto grid = brute_force_projection(F, w, set, 1e-3);
        for (int i = 0; i < set.dim(); ++i) {
          sweep.worst_grid_gap =
              std::max(sweep.worst_grid_gap, std::abs(x[i] - grid[i]));
        }
        const double dxw = bregman(F, x, w);
        for (const auto& a : set.vertices()) {
          std::vector<double> av(a.bits.begin(), a.bits.end());
          const double slack = bregman(F, av, w) - bregman(F, av, x) - dxw;
          sweep.worst_pythagoras = std::min(sweep.worst_pythagoras, slack);
        }
        for (int yrep = 0; yrep < 25; ++yrep) {
          const auto y = random_hull_point(set, rng);
          sweep.worst_optimality =
              std::max(sweep.worst_optimality, dxw - bregman(F, y, w));
        }
      }
    }
  }
  return sweep;
}

CheckResult check_alternating_mc() {
  const auto set = ActionSet::exp2_lower_bound(4);
  const auto adv = alternating_adversary(4);
  bool ok = true;
  std::ostringstream detail;
  for (double eta : {0.1, 1.0}) {
    std::vector<double> finals;
    for (int s = 0; s < 64; ++s) {
      Exp2Player player(set, eta, 0.0, FeedbackMode::Full);
      finals.push_back(
          run_game(player, *adv, set, 100, 9000 + s).final_regret);
    }
    const auto rep = summarize_regret(finals, std::nullopt);
    const double closed = exp2_alternating_regret(4, 100, eta);
    const double gap = std::abs(rep.mean - closed);
    ok = ok && gap <= 3.0 * rep.std_error;
    detail << "eta=" << eta << " mc=" << fmt(rep.mean) << " closed="
           << fmt(closed) << " 3se=" << fmt(3.0 * rep.std_error) << "; ";
  }
  return make_result("alternating-closed-form-mc", ok, detail.str());
}

CheckResult check_epsskew_mc() {
  const auto set = ActionSet::exp2_lower_bound(4);
  const auto adv = epsilon_skew_adversary(4, 0.1);
  std::vector<double> finals;
  for (int s = 0; s < 128; ++s) {
    Exp2Player player(set, 1.0, 0.0, FeedbackMode::Full);
    finals.push_back(run_game(player, *adv, set, 2, 3000 + s).final_regret);
  }
  const auto rep = summarize_regret(finals, std::nullopt);
  const double formula = exp2_epsskew_regret(4, 2, 1.0, 0.1);
  const double gap = std::abs(rep.mean - formula);
  const bool ok = gap <= 3.0 * rep.std_error;
  return make_result("epsskew-formula-mc", ok,
                     "mc " + fmt(rep.mean) + " formula " + fmt(formula) +
                         " 3se " + fmt(3.0 * rep.std_error));
}

CheckResult check_epsskew_min_bound() {
  bool ok = true;
  double worst_margin = std::numeric_limits<double>::infinity();
  const long n = 100;
  for (int d : {4, 8}) {
    for (double eta : {0.01, 0.05, 0.2, 1.0, 5.0}) {
      const double eps = std::min(std::log(2.0) / (eta * n), 1.0);
      const double value = exp2_epsskew_regret(d, n, eta, eps);
      const double floor = epsskew_min_bound(d, n, eta);
      worst_margin = std::min(worst_margin, value - floor);
      ok = ok && value >= floor - 1e-9;
    }
  }
  return make_result("epsskew-min-bound", ok, "min margin " + fmt(worst_margin));
}

CheckResult check_lower_bound_eta_grid() {
  const int d = 8;
  const long n = 64;
  const double floor =
      std::min(0.04 * n * d, 0.01 * std::pow(d, 1.5) * std::sqrt(double(n)));
  bool ok = true;
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 20; ++i) {
    const double eta = std::pow(10.0, -3.0 + 5.0 * i / 19.0);
    const double alt = exp2_alternating_regret(d, n, eta);
    const double eps = std::min(std::log(2.0) / (eta * n), 1.0);
    const double skew = exp2_epsskew_regret(d, n, eta, eps);
    const double value = std::max(alt, skew);
    worst = std::min(worst, value - floor);
    ok = ok && value >= floor - 1e-9;
  }
  return make_result("exp2lb-eta-grid", ok,
                     "floor " + fmt(floor) + ", min margin " + fmt(worst));
}

CheckResult check_tech1() {
  double worst = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= 200; ++k) {
    for (int ci = 0; ci <= 10; ++ci) {
      worst = std::min(worst, tech1_ratio(k, 1.0 + 0.1 * ci));
    }
  }
  return make_result("tech1-ratio", worst >= 1.0 / 3.0 - 1e-12,
                     "min ratio " + fmt(worst));
}

CheckResult check_kl_binomials() {
  double worst = -std::numeric_limits<double>::infinity();
  long cases = 0;
  for (double p : {0.3, 0.4, 0.5, 0.6, 0.7}) {
    for (double pp : {0.3, 0.4, 0.5, 0.6, 0.7}) {
      for (int n = 2; n <= 12; ++n) {
        for (int ell = (n + 1) / 2; ell <= n; ++ell) {
          for (double q : {p, pp}) {
            const auto r = kl_bound_check(p, pp, q, n, ell, 0.5);
            worst = std::max(worst, r.kl - r.bound);
            ++cases;
          }
        }
      }
    }
  }
  return make_result("kl-binomials", worst <= 1e-12,
                     std::to_string(cases) + " cases, max kl-bound " + fmt(worst));
}

CheckResult check_log_quadratic() {
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 1; i <= 9; ++i) {
    const double x0 = 0.1 * i;
    for (int j = 0; j <= 400; ++j) {
      const double x = x0 + j * 0.01;
      const auto r = log_quadratic_bound(x, x0);
      worst = std::max(worst, r.lhs - r.rhs);
    }
  }
  return make_result("log-quadratic", worst <= 1e-12, "max lhs-rhs " + fmt(worst));
}

CheckResult check_poisson_binomial() {
  RngStream rng(110, 0);
  double worst = 0.0;
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 1 + static_cast<int>(rng.uniform() * 12.0);
    std::vector<double> means(n);
    for (double& p : means) p = rng.uniform(0.05, 0.95);
    const auto pmf = poisson_binomial(means);
    double total = 0.0;
    for (double v : pmf) total += v;
    worst = std::max(worst, std::abs(total - 1.0));
    // Exhaustive outcome enumeration.
    std::vector<double> exact(n + 1, 0.0);
    for (long mask = 0; mask < (1L << n); ++mask) {
      double prob = 1.0;
      int ones = 0;
      for (int i = 0; i < n; ++i) {
        if (mask & (1L << i)) {
          prob *= means[i];
          ++ones;
        } else {
          prob *= 1.0 - means[i];
        }
      }
      exact[ones] += prob;
    }
    for (int k = 0; k <= n; ++k) {
      worst = std::max(worst, std::abs(pmf[k] - exact[k]));
    }
  }
  return make_result("poisson-binomial", worst <= 1e-12, "max err " + fmt(worst));
}

}  // namespace

std::vector<CheckResult> run_verification_suite() {
  std::vector<CheckResult> results;
  results.push_back(check_bregman_duality());
  results.push_back(check_inverse_map());
  results.push_back(check_negentropy_closed_form());
  results.push_back(check_gradient_fd());
  results.push_back(check_psi_quadratic());
  results.push_back(check_estimator_mean_semi());
  results.push_back(check_estimator_mean_exp2_semi());
  results.push_back(check_estimator_mean_exp2_bandit());
  {
    const auto sweep = projection_sweep();
    results.push_back(make_result("projection-vs-grid",
                                  sweep.worst_grid_gap <= 1e-3,
                                  "max gap " + fmt(sweep.worst_grid_gap)));
    results.push_back(make_result("projection-pythagorean",
                                  sweep.worst_pythagoras >= -1e-7,
                                  "min slack " + fmt(sweep.worst_pythagoras)));
    results.push_back(make_result("projection-optimality",
                                  sweep.worst_optimality <= 1e-8,
                                  "max excess " + fmt(sweep.worst_optimality)));
  }
  results.push_back(check_alternating_mc());
  results.push_back(check_epsskew_mc());
  results.push_back(check_epsskew_min_bound());
  results.push_back(check_lower_bound_eta_grid());
  results.push_back(check_tech1());
  results.push_back(check_kl_binomials());
  results.push_back(check_log_quadratic());
  results.push_back(check_poisson_binomial());
  return results;
}

}  // namespace combopt
