#pragma once

#include <span>
#include <vector>

#include "combopt/action_set.hpp"
#include "combopt/player.hpp"

namespace combopt {

// Exponentially weighted forecaster over the explicit vertex list, with
// full, semi-bandit and bandit estimators. Weights live in the log domain
// with max-subtraction after every update. In bandit mode the sampling
// distribution is mixed with the uniform exploration distribution,
// (1 - gamma) p_t + gamma / |A|, and the loss estimate inverts the played
// scalar through the pseudoinverse of P_t = E[a a^T] under that mixture.
class Exp2Player final : public Player {
 public:
  Exp2Player(const ActionSet& set, double eta, double gamma, FeedbackMode mode);

  ActionVector act(RngStream& rng) override;
  void learn(const ActionVector& a, const Feedback& fb) override;
  FeedbackMode feedback_mode() const override { return mode_; }

  // p_t induced by the current weights.
  std::vector<double> probabilities() const;
  // The distribution actions are drawn from: p_t mixed with uniform.
  std::vector<double> sampling_distribution() const;

  std::vector<double> estimate(const ActionVector& a, const Feedback& fb) const;
  void update(std::span<const double> estimate);

  const std::vector<double>& log_weights() const { return logw_; }
  double eta() const { return eta_; }
  double gamma() const { return gamma_; }

 private:
  const ActionSet* set_;
  double eta_;
  double gamma_;
  FeedbackMode mode_;
  std::vector<double> logw_;
};

}  // namespace combopt
