#pragma once

#include <span>
#include <vector>

#include "combopt/action_set.hpp"
#include "combopt/legendre.hpp"
#include "combopt/player.hpp"
#include "combopt/projection.hpp"
#include "combopt/rng.hpp"

namespace combopt {

// Convex combination of vertices: probabilities are nonnegative, sum to 1,
// and the weighted vertex mean reproduces the decomposed point.
struct VertexDistribution {
  std::vector<ActionVector> atoms;
  std::vector<double> probs;

  std::vector<double> mean() const;
  // Inverse-CDF draw over atoms in construction order.
  int sample(RngStream& rng) const;
};

// Caratheodory peeling: writes x in Conv(A) as a mixture of at most d+1
// vertices. Each step asks the linear oracle for a vertex of the minimal
// face containing the residual point (zeroed coordinates excluded,
// saturated ones forced, tight inequality rows covered, large residual
// coordinates preferred), then takes the maximal feasible step.
VertexDistribution decompose(const ActionSet& set, std::span<const double> x,
                             double feasibility_tol = 1e-9);

// Importance-weighted estimate from played coordinates:
// ztilde_i = masked_i / x_i where a_i = 1, zero elsewhere.
std::vector<double> estimate_semi_bandit(std::span<const double> x,
                                         const ActionVector& a,
                                         std::span<const double> masked);

// Mirror step in the dual chart: w = gradF*(gradF(x) - eta * estimate).
// Nonnegative estimates keep the dual point inside the dual domain for
// both Legendre families.
std::vector<double> dual_step(const LegendreFunction& F,
                              std::span<const double> x, double eta,
                              std::span<const double> estimate);

// Tuned learning rates and the matching regret guarantees.
double tuned_eta_negentropy(int m, int d, long n);
double tuned_eta_power(double q, int m, int d, long n);
double regret_bound_negentropy(int m, int d, long n);
double regret_bound_power(double q, int m, int d, long n);
// Dispatch on the Legendre family (negentropy / power with its q).
double tuned_eta(const LegendreFunction& F, int m, int d, long n);
double regret_bound(const LegendreFunction& F, int m, int d, long n);

// Online stochastic mirror descent over Conv(A): decompose-and-sample,
// estimate, dual gradient step, Bregman projection. Supports full and
// semi-bandit feedback.
class OsmdPlayer final : public Player {
 public:
  OsmdPlayer(const ActionSet& set, LegendreFunction F, double eta,
             FeedbackMode mode, double interior_floor = 1e-12);

  ActionVector act(RngStream& rng) override;
  void learn(const ActionVector& a, const Feedback& fb) override;
  FeedbackMode feedback_mode() const override { return mode_; }

  const std::vector<double>& mean_point() const { return x_; }
  const VertexDistribution& last_distribution() const { return last_p_; }
  long round() const { return t_; }

 private:
  const ActionSet* set_;
  LegendreFunction F_;
  double eta_;
  FeedbackMode mode_;
  double floor_;
  std::vector<double> x_;
  VertexDistribution last_p_;
  long t_ = 0;
};

}  // namespace combopt
