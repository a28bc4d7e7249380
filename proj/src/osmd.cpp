#include "combopt/osmd.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace combopt {

std::vector<double> VertexDistribution::mean() const {
  if (atoms.empty()) return {};
  std::vector<double> m(atoms[0].bits.size(), 0.0);
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (atoms[k].bits[i]) m[i] += probs[k];
    }
  }
  return m;
}

int VertexDistribution::sample(RngStream& rng) const {
  return rng.categorical(probs);
}

VertexDistribution decompose(const ActionSet& set, std::span<const double> x,
                             double feasibility_tol) {
  const int d = set.dim();
  if (static_cast<int>(x.size()) != d) {
    throw std::invalid_argument("decompose: dimension mismatch");
  }
  const auto& cs = set.conv_constraints();
  {
    const double viol = cs.max_violation(x);
    if (viol > feasibility_tol) {
      std::ostringstream os;
      os << "decompose: point violates the hull by " << viol;
      throw std::invalid_argument(os.str());
    }
  }
  std::vector<const LinearConstraint*> ineqs;
  for (const auto& r : cs.rows) {
    if (!r.equality) ineqs.push_back(&r);
  }

  // Layered oracle direction. The top layer keeps the chosen vertex on the
  // minimal face (never a zeroed coordinate, always a saturated one), the
  // middle layer covers tight inequality rows, the bottom greedily prefers
  // large residual coordinates. Layer magnitudes separate exactly:
  // big > m * (med + 1) and med > m.
  const double med = set.weight() + 1.0;
  const double big = (set.weight() + 1.0) * (set.weight() + 1.0);
  constexpr double kZeroTol = 1e-13;
  constexpr double kOneTol = 1e-11;
  constexpr double kTightTol = 1e-11;

  // Peeling runs on the unnormalized residual r = scale * y. Steps are then
  // subtractions rather than divisions by the shrinking remainder, so
  // rounding stays at absolute machine level however small the tail gets.
  std::vector<double> r(x.begin(), x.end());
  double scale = 1.0;
  for (double& ri : r) ri = std::clamp(ri, 0.0, 1.0);

  VertexDistribution out;
  std::vector<double> w(d);
  std::vector<char> tight(d);

  for (int step = 0; step <= d; ++step) {
    std::fill(tight.begin(), tight.end(), 0);
    for (const auto* row : ineqs) {
      double lhs = 0.0;
      for (int i = 0; i < d; ++i) lhs += row->coeffs[i] * r[i];
      if (row->rhs * scale - lhs <= kTightTol * scale) {
        for (int i = 0; i < d; ++i) {
          if (row->coeffs[i] != 0.0) tight[i] = 1;
        }
      }
    }
    for (int i = 0; i < d; ++i) {
      if (r[i] <= kZeroTol * scale) {
        w[i] = big;
      } else if (r[i] >= (1.0 - kOneTol) * scale) {
        w[i] = -big;
      } else {
        w[i] = 0.0;
      }
      if (tight[i]) w[i] -= med;
      w[i] -= r[i] / scale;
    }
    const ActionVector a = set.linear_minimize(w);

    // Maximal mass step: r - mu a must stay in (scale - mu) * Conv(A).
    double mu = scale;
    for (int i = 0; i < d; ++i) {
      mu = std::min(mu, a.bits[i] ? r[i] : scale - r[i]);
    }
    for (const auto* row : ineqs) {
      double lhs_r = 0.0, lhs_a = 0.0;
      for (int i = 0; i < d; ++i) {
        lhs_r += row->coeffs[i] * r[i];
        if (a.bits[i]) lhs_a += row->coeffs[i];
      }
      if (lhs_a < row->rhs - 1e-12) {
        mu = std::min(mu, (row->rhs * scale - lhs_r) / (row->rhs - lhs_a));
      }
    }

    if (mu >= scale - 1e-12) {
      // Remaining tail is below resolution; fold it into the final atom.
      out.atoms.push_back(a);
      out.probs.push_back(scale);
      return out;
    }
    if (mu <= 1e-14 * scale) {
      throw std::runtime_error("decompose: stalled at step " +
                               std::to_string(step));
    }
    out.atoms.push_back(a);
    out.probs.push_back(mu);
    for (int i = 0; i < d; ++i) {
      if (a.bits[i]) r[i] -= mu;
      if (r[i] < 0.0) r[i] = 0.0;
    }
    scale -= mu;
  }
  throw std::runtime_error("decompose: more than d+1 atoms");
}

std::vector<double> estimate_semi_bandit(std::span<const double> x,
                                         const ActionVector& a,
                                         std::span<const double> masked) {
  if (x.size() != a.bits.size() || masked.size() != a.bits.size()) {
    throw std::invalid_argument("estimate_semi_bandit: dimension mismatch");
  }
  std::vector<double> out(x.size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!a.bits[i]) continue;
    if (!(x[i] >= 1e-10)) {
      throw std::runtime_error(
          "estimate_semi_bandit: interior maintenance failure at coordinate " +
          std::to_string(i));
    }
    if (masked[i] < 0.0) {
      throw std::invalid_argument("estimate_semi_bandit: negative observed loss");
    }
    out[i] = masked[i] / x[i];
  }
  return out;
}

namespace {

// gradF(x) - eta * estimate, validated against the dual domain.
std::vector<double> mirror_dual_point(const LegendreFunction& F,
                                      std::span<const double> x, double eta,
                                      std::span<const double> estimate) {
  if (x.size() != estimate.size()) {
    throw std::invalid_argument("dual_step: dimension mismatch");
  }
  std::vector<double> u(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(estimate[i] >= 0.0)) {
      throw std::invalid_argument("dual_step: loss estimate must be nonnegative");
    }
    u[i] = F.grad1(x[i]) - eta * estimate[i];
    if (!F.in_dual(u[i])) {
      throw std::runtime_error("dual_step: dual point left the dual domain");
    }
  }
  return u;
}

}  // namespace

std::vector<double> dual_step(const LegendreFunction& F,
                              std::span<const double> x, double eta,
                              std::span<const double> estimate) {
  const std::vector<double> u = mirror_dual_point(F, x, eta, estimate);
  std::vector<double> w(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    w[i] = F.grad_star1(u[i]);
    if (!(w[i] > 0.0)) {
      throw std::runtime_error(
          "dual_step: coordinate underflow; eta * estimate too large at " +
          std::to_string(i));
    }
  }
  return w;
}

double tuned_eta_negentropy(int m, int d, long n) {
  if (m < 1 || d <= m) {
    throw std::invalid_argument("negentropy tuning needs d > m >= 1");
  }
  if (n < 1) throw std::invalid_argument("tuning needs n >= 1");
  const double ratio = static_cast<double>(d) / m;
  return std::sqrt(2.0 * m * std::log(ratio) / (static_cast<double>(n) * d));
}

double regret_bound_negentropy(int m, int d, long n) {
  if (m < 1 || d <= m) {
    throw std::invalid_argument("negentropy bound needs d > m >= 1");
  }
  if (n < 0) throw std::invalid_argument("bound needs n >= 0");
  const double ratio = static_cast<double>(d) / m;
  return std::sqrt(2.0 * m * d * static_cast<double>(n) * std::log(ratio));
}

double tuned_eta_power(double q, int m, int d, long n) {
  if (!(q > 1.0)) throw std::invalid_argument("power tuning needs q > 1");
  if (m < 1 || d < m) throw std::invalid_argument("power tuning needs d >= m >= 1");
  if (n < 1) throw std::invalid_argument("tuning needs n >= 1");
  const double ratio = static_cast<double>(m) / d;
  return std::sqrt(2.0 / (q - 1.0) * std::pow(ratio, 1.0 - 2.0 / q) /
                   static_cast<double>(n));
}

double regret_bound_power(double q, int m, int d, long n) {
  if (!(q > 1.0)) throw std::invalid_argument("power bound needs q > 1");
  if (m < 1 || d < m) throw std::invalid_argument("power bound needs d >= m >= 1");
  if (n < 0) throw std::invalid_argument("bound needs n >= 0");
  return q * std::sqrt(2.0 / (q - 1.0) * m * d * static_cast<double>(n));
}

double tuned_eta(const LegendreFunction& F, int m, int d, long n) {
  return F.family() == LegendreFunction::Family::Negentropy
             ? tuned_eta_negentropy(m, d, n)
             : tuned_eta_power(F.q(), m, d, n);
}

double regret_bound(const LegendreFunction& F, int m, int d, long n) {
  return F.family() == LegendreFunction::Family::Negentropy
             ? regret_bound_negentropy(m, d, n)
             : regret_bound_power(F.q(), m, d, n);
}

OsmdPlayer::OsmdPlayer(const ActionSet& set, LegendreFunction F, double eta,
                       FeedbackMode mode, double interior_floor)
    : set_(&set),
      F_(std::move(F)),
      eta_(eta),
      mode_(mode),
      floor_(interior_floor) {
  if (F_.dim() != set.dim()) {
    throw std::invalid_argument("osmd: Legendre dimension mismatch");
  }
  if (!(eta > 0.0)) throw std::invalid_argument("osmd: eta must be positive");
  if (mode == FeedbackMode::Bandit) {
    throw std::invalid_argument("osmd: supports full and semi-bandit feedback");
  }
  x_ = legendre_minimizer(F_, set);
}

ActionVector OsmdPlayer::act(RngStream& rng) {
  last_p_ = decompose(*set_, x_);
  const int k = last_p_.sample(rng);
  return last_p_.atoms[k];
}

void OsmdPlayer::learn(const ActionVector& a, const Feedback& fb) {
  if (fb.mode != mode_) {
    throw std::invalid_argument("osmd: feedback mode mismatch");
  }
  const std::vector<double> estimate =
      mode_ == FeedbackMode::Full ? fb.values
                                  : estimate_semi_bandit(x_, a, fb.values);
  // Mirror step and projection composed in the dual chart; materializing
  // the intermediate point would underflow under very large steps.
  const std::vector<double> u = mirror_dual_point(F_, x_, eta_, estimate);
  x_ = bregman_project_dual(F_, u, *set_);
  double lo = x_[0];
  for (double xi : x_) lo = std::min(lo, xi);
  if (lo < floor_) {
    // One clamp-and-reproject pass keeps the importance weights bounded.
    for (double& xi : x_) xi = std::max(xi, floor_);
    x_ = bregman_project(F_, x_, *set_);
  }
  ++t_;
}

}  // namespace combopt
