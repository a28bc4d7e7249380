#include "doctest.h"

#include <stdexcept>

#include <cmath>

#include "combopt/oracles.hpp"

using namespace combopt;

TEST_CASE("alternating closed form: pinned values") {
  CHECK(exp2_alternating_regret(4, 2, 2.0) ==
        doctest::Approx(0.5 * std::tanh(1.0)));
  CHECK(exp2_alternating_regret(4, 2, 0.0) == 0.0);
  CHECK(exp2_alternating_regret(8, 100, 1.0) ==
        doctest::Approx(50.0 * std::tanh(1.0)));
  CHECK_THROWS_AS(exp2_alternating_regret(6, 2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(exp2_alternating_regret(4, 3, 1.0), std::invalid_argument);
}

TEST_CASE("epsskew formula: small case by direct sum") {
  // d=4 -> k=1: ratio = 1 / (1 + exp(eta n eps)); value = n eps d/4 * ratio.
  const double eta = 1.0, eps = 0.1;
  const long n = 2;
  const double expect = (n * eps * 4 / 4.0) / (1.0 + std::exp(eta * n * eps));
  CHECK(exp2_epsskew_regret(4, n, eta, eps) == doctest::Approx(expect));
}

TEST_CASE("epsskew formula: stays finite for huge growth rates") {
  const double v = exp2_epsskew_regret(16, 1000, 50.0, 1.0);
  CHECK(std::isfinite(v));
  CHECK(v >= 0.0);
  // With c enormous the denominator concentrates on i = k while the
  // numerator's top term i = k carries weight zero, so the ratio collapses.
  CHECK(v <= 1e-6);
}

TEST_CASE("epsskew min bound holds on the tuned-eps grid") {
  for (int d : {4, 8}) {
    for (double eta : {0.01, 0.05, 0.2, 1.0, 5.0}) {
      const long n = 100;
      const double eps = std::min(std::log(2.0) / (eta * n), 1.0);
      CHECK(exp2_epsskew_regret(d, n, eta, eps) >=
            epsskew_min_bound(d, n, eta) - 1e-9);
    }
  }
}

TEST_CASE("tech1 ratio: pinned values and floor") {
  CHECK(tech1_ratio(1, 2.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(tech1_ratio(2, 1.0) == doctest::Approx(0.5).epsilon(1e-12));
  for (int k : {1, 2, 5, 17, 63, 128, 200}) {
    for (double c = 1.0; c <= 2.0 + 1e-12; c += 0.1) {
      CHECK(tech1_ratio(k, std::min(c, 2.0)) >= 1.0 / 3.0 - 1e-12);
    }
  }
  CHECK_THROWS_AS(tech1_ratio(0, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(tech1_ratio(5, 2.5), std::invalid_argument);
}

TEST_CASE("poisson binomial: pinned pmfs") {
  const auto fair = poisson_binomial(std::vector<double>{0.5, 0.5});
  REQUIRE(fair.size() == 3);
  CHECK(fair[0] == doctest::Approx(0.25));
  CHECK(fair[1] == doctest::Approx(0.5));
  CHECK(fair[2] == doctest::Approx(0.25));

  const auto single = poisson_binomial(std::vector<double>{0.3});
  CHECK(single[0] == doctest::Approx(0.7));
  CHECK(single[1] == doctest::Approx(0.3));

  const auto three = poisson_binomial(std::vector<double>{0.6, 0.5, 0.5});
  double total = 0.0;
  for (double v : three) total += v;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(poisson_binomial(std::vector<double>{0.0, 0.5}),
                  std::invalid_argument);
}

TEST_CASE("kl divergence: basic properties") {
  const std::vector<double> p = {0.5, 0.5};
  const std::vector<double> q = {0.25, 0.75};
  CHECK(kl_divergence(p, p) == doctest::Approx(0.0));
  CHECK(kl_divergence(p, q) > 0.0);
  CHECK_THROWS_AS(kl_divergence(p, std::vector<double>{1.0, 0.0}),
                  std::invalid_argument);
}

TEST_CASE("kl bound: pinned example") {
  const auto r = kl_bound_check(0.5, 0.6, 0.5, 2, 1, 0.5);
  CHECK(r.bound == doctest::Approx(0.025));
  CHECK(r.kl <= r.bound);
  CHECK(r.kl == doctest::Approx(0.0067724).epsilon(1e-4));

  const auto same = kl_bound_check(0.5, 0.5, 0.5, 2, 1, 0.5);
  CHECK(same.kl == doctest::Approx(0.0));
  CHECK(same.bound == doctest::Approx(0.0));
}

TEST_CASE("kl bound: full parameter grid has no violations") {
  for (double p : {0.3, 0.4, 0.5, 0.6, 0.7}) {
    for (double pp : {0.3, 0.4, 0.5, 0.6, 0.7}) {
      for (int n = 2; n <= 12; ++n) {
        for (int ell = (n + 1) / 2; ell <= n; ++ell) {
          for (double q : {p, pp}) {
            const auto r = kl_bound_check(p, pp, q, n, ell, 0.5);
            CHECK(r.kl <= r.bound + 1e-12);
          }
        }
      }
    }
  }
}

TEST_CASE("kl bound: constraint validation") {
  CHECK_THROWS_AS(kl_bound_check(0.5, 0.6, 0.4, 4, 2, 0.5),
                  std::invalid_argument);  // q not in {p, p'}
  CHECK_THROWS_AS(kl_bound_check(0.5, 0.6, 0.5, 4, 1, 0.5),
                  std::invalid_argument);  // ell < n/2
  CHECK_THROWS_AS(kl_bound_check(0.5, 1.0, 0.5, 4, 2, 0.5),
                  std::invalid_argument);
}

TEST_CASE("log quadratic bound: pinned values and sweep") {
  const auto at_one = log_quadratic_bound(1.0, 0.5);
  CHECK(at_one.lhs == doctest::Approx(0.0));
  CHECK(at_one.rhs == doctest::Approx(0.0));

  const auto at_half = log_quadratic_bound(0.5, 0.5);
  CHECK(at_half.lhs == doctest::Approx(std::log(2.0)));
  CHECK(at_half.rhs == doctest::Approx(0.75));

  for (int i = 1; i <= 9; ++i) {
    const double x0 = 0.1 * i;
    for (int j = 0; j <= 300; ++j) {
      const auto r = log_quadratic_bound(x0 + 0.02 * j, x0);
      CHECK(r.lhs <= r.rhs + 1e-12);
    }
  }
  CHECK_THROWS_AS(log_quadratic_bound(0.3, 0.5), std::invalid_argument);
}

TEST_CASE("minimax reference: pinned values and preconditions") {
  CHECK(minimax_lower_reference(1, 4, 100) == doctest::Approx(0.4));
  CHECK(minimax_lower_reference(2, 4, 4) == doctest::Approx(0.16));
  CHECK_THROWS_AS(minimax_lower_reference(3, 4, 100), std::invalid_argument);
  CHECK_THROWS_AS(minimax_lower_reference(1, 4, 2), std::invalid_argument);
}

TEST_CASE("brute force projection: feasible input comes back unchanged") {
  const auto set = ActionSet::mset(2, 1);
  const auto F = LegendreFunction::negentropy(2);
  const auto x = brute_force_projection(F, std::vector<double>{0.3, 0.7}, set, 1e-3);
  CHECK(x[0] == doctest::Approx(0.3).epsilon(2e-3));
  CHECK(x[1] == doctest::Approx(0.7).epsilon(2e-3));

  const auto y =
      brute_force_projection(F, std::vector<double>{1.0, 3.0}, set, 1e-4);
  CHECK(y[0] == doctest::Approx(0.25).epsilon(1e-3));
  CHECK(y[1] == doctest::Approx(0.75).epsilon(1e-3));
}

TEST_CASE("brute force projection: guards") {
  const auto F = LegendreFunction::negentropy(4);
  CHECK_THROWS_AS(brute_force_projection(F, std::vector<double>{1, 1, 1, 1},
                                         ActionSet::mset(4, 2), 1e-2),
                  std::invalid_argument);
  const auto F2 = LegendreFunction::negentropy(4);
  CHECK_THROWS_AS(brute_force_projection(F2, std::vector<double>{1, 1, 1, 1},
                                         ActionSet::parallel_games(4, 2), 1e-2),
                  std::invalid_argument);
}

TEST_CASE("the full verification suite passes") {
  for (const auto& result : run_verification_suite()) {
    INFO(result.name, ": ", result.detail);
    CHECK(result.passed);
  }
}
