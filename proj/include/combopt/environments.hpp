#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "combopt/action_set.hpp"
#include "combopt/rng.hpp"

namespace combopt {

enum class FeedbackMode { Full, SemiBandit, Bandit };

FeedbackMode parse_feedback_mode(const std::string& s);
std::string feedback_mode_name(FeedbackMode mode);

// What the player gets to see after a round: the whole loss vector, the
// played coordinates z_i a_i, or just the scalar a.z.
struct Feedback {
  FeedbackMode mode = FeedbackMode::Full;
  std::vector<double> values;  // full: z; semi-bandit: (z_i a_i)_i
  double scalar = 0.0;         // bandit: a.z
};

Feedback observe(FeedbackMode mode, const ActionVector& a,
                 std::span<const double> z);

// Loss generator. Implementations are oblivious or stochastic; the
// observe_action hook exists so adaptive rules fit the same interface.
class Adversary {
 public:
  virtual ~Adversary() = default;

  // Loss vector of round t (1-based), in [0,1]^d. Stochastic kinds draw
  // from the environment stream; oblivious kinds ignore it.
  virtual std::vector<double> loss_vector(long t, RngStream& env) = 0;

  virtual bool stochastic() const { return false; }
  // Exact expected per-round loss of the optimal fixed action; the regret
  // comparator for stochastic kinds. Throws for oblivious kinds.
  virtual double best_expected_round_loss() const;

  virtual void observe_action(const ActionVector&) {}
  virtual const std::string& describe() const = 0;
  virtual std::unique_ptr<Adversary> clone() const = 0;
};

// Appendix-style alternating adversary: zero loss on the first half of the
// coordinates, full loss alternating between the two quarter intervals of
// the second half.
std::unique_ptr<Adversary> alternating_adversary(int d);

// Constant skewed loss: 1 - eps on the first quarter, 1 on the second
// quarter, 0 on the second half.
std::unique_ptr<Adversary> epsilon_skew_adversary(int d, double eps);

// Parallel-games stochastic adversary: coordinate (i, j) is Bernoulli with
// mean 1/2 - eps * alpha(i, j), so alpha is optimal in expectation.
std::unique_ptr<Adversary> alpha_adversary(const ActionSet& set,
                                           const ActionVector& alpha,
                                           double eps);

// All coordinates i.i.d. uniform on [0,1]; every action then has expected
// round loss m/2, which is the comparator value.
std::unique_ptr<Adversary> iid_uniform_adversary(int d, int m);

// Fixed loss sequence, one row per round.
std::unique_ptr<Adversary> fixed_sequence_adversary(
    std::vector<std::vector<double>> losses);
std::unique_ptr<Adversary> fixed_sequence_from_file(const std::string& path,
                                                    int d);

// Grammar: alternating | epsskew:eps=0.1 | alpha:eps=0.1,alpha=<index> |
//          iid | file:<csv>
std::unique_ptr<Adversary> make_adversary(const std::string& descriptor,
                                          const ActionSet& set);

}  // namespace combopt
