// Acceptance suite: one test case per release criterion, each printing a
// single PASS/FAIL line. Tolerances are fixed here, not tuned at runtime.

#include "doctest.h"

#include <stdexcept>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "combopt/environments.hpp"
#include "combopt/exp2.hpp"
#include "combopt/harness.hpp"
#include "combopt/oracles.hpp"
#include "combopt/osmd.hpp"
#include "combopt/projection.hpp"

using namespace combopt;

namespace {

void report(int id, const char* name, bool pass, const std::string& detail) {
  std::printf("[criterion %02d] %-38s %s  (%s)\n", id, name,
              pass ? "PASS" : "FAIL", detail.c_str());
}

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::vector<double> random_point(RngStream& rng, int d, double lo, double hi) {
  std::vector<double> x(d);
  for (double& xi : x) xi = rng.uniform(lo, hi);
  return x;
}

std::vector<double> interior_point(const ActionSet& set, RngStream& rng) {
  const auto& verts = set.vertices();
  std::vector<double> lambda(verts.size());
  double sum = 0.0;
  for (double& l : lambda) {
    l = 0.05 + rng.uniform();
    sum += l;
  }
  std::vector<double> x(set.dim(), 0.0);
  for (std::size_t k = 0; k < verts.size(); ++k) {
    for (int i = 0; i < set.dim(); ++i) {
      if (verts[k].bits[i]) x[i] += lambda[k] / sum;
    }
  }
  return x;
}

double mean_regret_osmd(const ActionSet& set, const std::string& legendre,
                        const std::string& adversary, long n, int seeds) {
  const LegendreFunction F = LegendreFunction::parse(legendre, set.dim());
  const double eta = tuned_eta(F, set.weight(), set.dim(), n);
  auto adv = make_adversary(adversary, set);
  double total = 0.0;
  for (int s = 1; s <= seeds; ++s) {
    OsmdPlayer player(set, F, eta, FeedbackMode::SemiBandit);
    total += run_game(player, *adv, set, n, s).final_regret;
  }
  return total / seeds;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("criterion 1: primal/dual Bregman divergences coincide") {
  RngStream rng(100, 1);
  double worst = 0.0;
  std::vector<LegendreFunction> families = {LegendreFunction::negentropy(5)};
  for (double q : {1.5, 2.0, 3.0}) {
    families.push_back(LegendreFunction::power_potential(q, 5));
  }
  for (const auto& F : families) {
    for (int it = 0; it < 1000; ++it) {
      const auto x = random_point(rng, 5, 0.05, 3.0);
      const auto y = random_point(rng, 5, 0.05, 3.0);
      const double primal = bregman(F, x, y);
      const double dual = dual_bregman(F, F.grad(y), F.grad(x));
      worst = std::max(worst,
                       std::abs(primal - dual) / (1.0 + std::abs(primal)));
    }
  }
  const bool pass = worst <= 1e-8;
  report(1, "bregman duality identity", pass, "max rel err " + fmt(worst));
  CHECK(pass);
}

TEST_CASE("criterion 2: estimators are exactly unbiased") {
  RngStream rng(200, 1);
  double worst_semi = 0.0, worst_exp2 = 0.0, worst_bandit = 0.0;
  const std::vector<ActionSet> sets = {ActionSet::mset(6, 2),
                                       ActionSet::parallel_games(6, 2),
                                       ActionSet::exp2_lower_bound(8)};
  for (const auto& set : sets) {
    Exp2Player exp2(set, 0.6, 0.0, FeedbackMode::SemiBandit);
    for (int rep = 0; rep < 25; ++rep) {
      const auto x = interior_point(set, rng);
      const auto z = random_point(rng, set.dim(), 0.0, 1.0);
      const auto p = decompose(set, x);
      const auto mean_semi = exact_estimator_mean_semi(p, x, z);
      const auto mean_exp2 = exact_estimator_mean_exp2(exp2, set, z);
      for (int i = 0; i < set.dim(); ++i) {
        worst_semi = std::max(worst_semi, std::abs(mean_semi[i] - z[i]));
        worst_exp2 = std::max(worst_exp2, std::abs(mean_exp2[i] - z[i]));
      }
      const auto a = exp2.act(rng);
      exp2.learn(a, observe(FeedbackMode::SemiBandit, a, z));
    }
  }
  {
    const auto set = ActionSet::mset(4, 1);
    Exp2Player bandit(set, 0.5, 0.2, FeedbackMode::Bandit);
    for (int rep = 0; rep < 25; ++rep) {
      const auto z = random_point(rng, 4, 0.0, 1.0);
      const auto mean = exact_estimator_mean_exp2(bandit, set, z);
      for (int i = 0; i < 4; ++i) {
        worst_bandit = std::max(worst_bandit, std::abs(mean[i] - z[i]));
      }
      const auto a = bandit.act(rng);
      bandit.learn(a, observe(FeedbackMode::Bandit, a, z));
    }
  }
  const bool pass =
      worst_semi <= 1e-12 && worst_exp2 <= 1e-12 && worst_bandit <= 1e-12;
  report(2, "estimator unbiasedness", pass,
         "semi " + fmt(worst_semi) + ", exp2 " + fmt(worst_exp2) + ", bandit " +
             fmt(worst_bandit));
  CHECK(pass);
}

TEST_CASE("criterion 3: negentropy tuned envelope on mset(8,2)") {
  const auto set = ActionSet::mset(8, 2);
  const long n = 5000;
  const double bound = regret_bound_negentropy(2, 8, n);
  const double iid = mean_regret_osmd(set, "negentropy", "iid", n, 32);
  const double skew =
      mean_regret_osmd(set, "negentropy", "epsskew:eps=0.25", n, 32);
  const bool pass = iid <= bound && skew <= bound;
  report(3, "negentropy regret envelope", pass,
         "iid " + fmt(iid) + ", epsskew " + fmt(skew) + " <= bound " +
             fmt(bound));
  CHECK(pass);
}

TEST_CASE("criterion 4: power-potential envelope and bound comparison") {
  const auto set = ActionSet::mset(8, 2);
  const long n = 5000;
  const double bound = regret_bound_power(2.0, 2, 8, n);
  const double iid = mean_regret_osmd(set, "inf:q=2", "iid", n, 32);
  const double skew =
      mean_regret_osmd(set, "inf:q=2", "epsskew:eps=0.25", n, 32);
  // The q=2 bound 2 sqrt(2mdn) undercuts sqrt(2mdn log(d/m)) exactly when
  // log(d/m) > 4; d/m = 128 clears that threshold.
  const double power_small = regret_bound_power(2.0, 1, 128, 1000);
  const double entropy_large = regret_bound_negentropy(1, 128, 1000);
  const bool pass =
      iid <= bound && skew <= bound && power_small < entropy_large;
  report(4, "power potential envelope", pass,
         "iid " + fmt(iid) + ", epsskew " + fmt(skew) + " <= bound " +
             fmt(bound) + "; bounds at d/m=128: " + fmt(power_small) + " < " +
             fmt(entropy_large));
  CHECK(pass);
}

TEST_CASE("criterion 5: alternating adversary closed form vs Monte Carlo") {
  const auto set = ActionSet::exp2_lower_bound(4);
  const auto adv = alternating_adversary(4);
  bool pass = true;
  std::ostringstream detail;
  for (double eta : {0.1, 1.0}) {
    std::vector<double> finals;
    for (int s = 0; s < 64; ++s) {
      Exp2Player player(set, eta, 0.0, FeedbackMode::Full);
      finals.push_back(run_game(player, *adv, set, 100, 700 + s).final_regret);
    }
    const auto rep = summarize_regret(finals, std::nullopt);
    const double closed = exp2_alternating_regret(4, 100, eta);
    pass = pass && std::abs(rep.mean - closed) <= 3.0 * rep.std_error;
    detail << "eta=" << eta << ": |" << fmt(rep.mean) << "-" << fmt(closed)
           << "| vs 3se=" << fmt(3.0 * rep.std_error) << "; ";
  }
  report(5, "alternating closed form (MC)", pass, detail.str());
  CHECK(pass);
}

TEST_CASE("criterion 6: skewed-adversary formula beats its floor") {
  bool pass = true;
  double margin = std::numeric_limits<double>::infinity();
  const long n = 100;
  for (int d : {4, 8}) {
    for (double eta : {0.01, 0.05, 0.2, 1.0, 5.0}) {
      const double eps = std::min(std::log(2.0) / (eta * n), 1.0);
      const double value = exp2_epsskew_regret(d, n, eta, eps);
      const double floor = epsskew_min_bound(d, n, eta);
      margin = std::min(margin, value - floor);
      pass = pass && value >= floor - 1e-9;
    }
  }
  report(6, "skewed-adversary lower floor", pass, "min margin " + fmt(margin));
  CHECK(pass);
}

TEST_CASE("criterion 7: exp2 suboptimality floor over the eta grid") {
  const int d = 8;
  const long n = 64;
  const double floor = std::min(
      0.04 * n * d, 0.01 * std::pow(double(d), 1.5) * std::sqrt(double(n)));
  bool pass = true;
  double margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 20; ++i) {
    const double eta = std::pow(10.0, -3.0 + 5.0 * i / 19.0);
    const double alt = exp2_alternating_regret(d, n, eta);
    const double eps = std::min(std::log(2.0) / (eta * n), 1.0);
    const double skew = exp2_epsskew_regret(d, n, eta, eps);
    margin = std::min(margin, std::max(alt, skew) - floor);
    pass = pass && std::max(alt, skew) >= floor - 1e-9;
  }
  report(7, "adversary-pair floor on eta grid", pass,
         "floor " + fmt(floor) + ", min margin " + fmt(margin));
  CHECK(pass);
}

TEST_CASE("criterion 8: Bernoulli-sum KL bound over the full grid") {
  bool pass = true;
  double worst = -std::numeric_limits<double>::infinity();
  long cases = 0;
  for (double p : {0.3, 0.4, 0.5, 0.6, 0.7}) {
    for (double pp : {0.3, 0.4, 0.5, 0.6, 0.7}) {
      for (int n = 2; n <= 12; ++n) {
        for (int ell = (n + 1) / 2; ell <= n; ++ell) {
          for (double q : {p, pp}) {
            const auto r = kl_bound_check(p, pp, q, n, ell, 0.5);
            worst = std::max(worst, r.kl - r.bound);
            pass = pass && r.kl <= r.bound + 1e-12;
            ++cases;
          }
        }
      }
    }
  }
  report(8, "KL of Bernoulli sums", pass,
         std::to_string(cases) + " cases, max kl-bound " + fmt(worst));
  CHECK(pass);
}

TEST_CASE("criterion 9: binomial ratio floor 1/3") {
  bool pass = true;
  double worst = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= 200; ++k) {
    for (int ci = 0; ci <= 10; ++ci) {
      const double r = tech1_ratio(k, 1.0 + 0.1 * ci);
      worst = std::min(worst, r);
      pass = pass && r >= 1.0 / 3.0 - 1e-12;
    }
  }
  report(9, "binomial ratio floor", pass, "min ratio " + fmt(worst));
  CHECK(pass);
}

TEST_CASE("criterion 10: projection vs grid oracle + Pythagoras") {
  RngStream rng(1000, 1);
  double worst_gap = 0.0;
  double worst_slack = 0.0;
  for (const auto& set : {ActionSet::mset(2, 1), ActionSet::mset(3, 2)}) {
    for (const auto& F : {LegendreFunction::negentropy(set.dim()),
                          LegendreFunction::power_potential(2.0, set.dim())}) {
      for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> w(set.dim());
        for (double& wi : w) wi = std::exp(rng.uniform(-1.5, 1.5));
        const auto x = bregman_project(F, w, set);
        const auto grid = brute_force_projection(F, w, set, 1e-3);
        for (int i = 0; i < set.dim(); ++i) {
          worst_gap = std::max(worst_gap, std::abs(x[i] - grid[i]));
        }
        const double dxw = bregman(F, x, w);
        for (const auto& a : set.vertices()) {
          const std::vector<double> av(a.bits.begin(), a.bits.end());
          const double slack = bregman(F, av, w) - bregman(F, av, x) - dxw;
          worst_slack = std::min(worst_slack, slack);
        }
      }
    }
  }
  const bool pass = worst_gap <= 1e-3 && worst_slack >= -1e-7;
  report(10, "projection correctness", pass,
         "max grid gap " + fmt(worst_gap) + ", min slack " + fmt(worst_slack));
  CHECK(pass);
}

TEST_CASE("criterion 11: sweeps are byte-deterministic") {
  SweepConfig config;
  config.set = "mset:d=4,m=2";
  config.rounds = 60;
  config.seeds = {1, 2, 3, 4};
  PlayerSpec osmd_spec;
  osmd_spec.kind = "osmd";
  osmd_spec.eta = "auto";
  osmd_spec.feedback = "semi";
  PlayerSpec exp2_spec;
  exp2_spec.kind = "exp2";
  exp2_spec.eta = "0.3";
  exp2_spec.feedback = "full";
  config.players = {osmd_spec, exp2_spec};
  config.adversaries = {"iid", "alternating"};

  config.out_dir = "acceptance_sweep_a";
  std::filesystem::remove_all(config.out_dir);
  const auto first = run_sweep(config);
  config.out_dir = "acceptance_sweep_b";
  std::filesystem::remove_all(config.out_dir);
  const auto second = run_sweep(config);

  bool pass = slurp("acceptance_sweep_a/summary.csv") ==
              slurp("acceptance_sweep_b/summary.csv");
  REQUIRE(first.size() == second.size());
  for (std::size_t k = 0; k < first.size(); ++k) {
    pass = pass && slurp(first[k].trace_path) == slurp(second[k].trace_path);
  }
  std::filesystem::remove_all("acceptance_sweep_a");
  std::filesystem::remove_all("acceptance_sweep_b");
  report(11, "sweep byte determinism", pass,
         std::to_string(first.size()) + " cells compared");
  CHECK(pass);
}
