#pragma once

#include <span>
#include <string>
#include <vector>

#include "combopt/action_set.hpp"
#include "combopt/exp2.hpp"
#include "combopt/legendre.hpp"
#include "combopt/osmd.hpp"

namespace combopt {

// Exhaustive mean of the importance-weighted semi-bandit estimate under a
// vertex distribution; unbiasedness means this returns z.
std::vector<double> exact_estimator_mean_semi(const VertexDistribution& p,
                                              std::span<const double> x,
                                              std::span<const double> z);

// Exhaustive mean of the exp2 estimator in the player's feedback mode,
// weighting each action by its sampling probability.
std::vector<double> exact_estimator_mean_exp2(const Exp2Player& player,
                                              const ActionSet& set,
                                              std::span<const double> z);

// Grid argmin of D_F(., w) over the hull. Supports hulls made of the box
// plus one sum constraint (m-sets) in up to three dimensions.
std::vector<double> brute_force_projection(const LegendreFunction& F,
                                           std::span<const double> w,
                                           const ActionSet& set,
                                           double resolution);

// Closed-form exp2 regret against the alternating adversary:
// (n d / 16) tanh(eta d / 8), exact for even n.
double exp2_alternating_regret(int d, long n, double eta);

// The binomial-ratio lower bound on exp2's regret against the constant
// skewed adversary, evaluated in the log domain:
// (n eps d / 4) * sum_{i<k} (1 - i/k) C(k,i)^2 e^{eta i n eps}
//              / sum_{i<=k}          C(k,i)^2 e^{eta i n eps},  k = d/4.
double exp2_epsskew_regret(int d, long n, double eta, double eps);

// min(d log2 / (12 eta), n d / 12), the floor the skewed construction
// guarantees once eps = min(log2 / (eta n), 1).
double epsskew_min_bound(int d, long n, double eta);

// sum_i (1 - i/k) C(k,i)^2 c^i / sum_i C(k,i)^2 c^i; at least 1/3 for
// c in [1, 2].
double tech1_ratio(int k, double c);

// Exact pmf of a sum of independent Bernoullis by iterated convolution.
std::vector<double> poisson_binomial(std::span<const double> means);

// KL(p || q) in nats; zero mass on both sides contributes nothing.
double kl_divergence(std::span<const double> p, std::span<const double> q);

struct KlBoundResult {
  double kl = 0.0;
  double bound = 0.0;
};

// Exact KL between two Bernoulli-sum distributions that differ in their
// first parameter (p vs pprime), with ell leading parameters equal to q in
// {p, pprime} and the remaining n - ell equal to `tail`, against the bound
// 2 (pprime - p)^2 / ((1 - pprime)(n + 2) q). Requires n/2 <= ell <= n.
KlBoundResult kl_bound_check(double p, double pprime, double q, int n, int ell,
                             double tail);

struct LogBoundResult {
  double lhs = 0.0;
  double rhs = 0.0;
};

// -log(x) <= -(x - 1) + (x - 1)^2 / (2 x0) for x >= x0, x0 in (0, 1).
LogBoundResult log_quadratic_bound(double x, double x0);

// Reference line 0.02 m sqrt(d n) for the bandit minimax floor;
// requires n >= d >= 2m.
double minimax_lower_reference(int m, int d, long n);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// The full oracle suite: identity checks, lemma sweeps, Monte Carlo
// cross-checks. Deterministic (fixed internal seeds).
std::vector<CheckResult> run_verification_suite();

}  // namespace combopt
