#include "doctest.h"

#include <stdexcept>

#include <algorithm>
#include <cmath>

#include "combopt/action_set.hpp"
#include "combopt/rng.hpp"

using namespace combopt;

namespace {

std::vector<double> random_weights(RngStream& rng, int d, double lo, double hi) {
  std::vector<double> w(d);
  for (double& wi : w) wi = rng.uniform(lo, hi);
  return w;
}

ActionVector scan_minimize(const ActionSet& set, std::span<const double> w) {
  const auto& verts = set.vertices();
  const ActionVector* best = &verts[0];
  double best_val = verts[0].dot(w);
  for (const auto& v : verts) {
    const double val = v.dot(w);
    if (val < best_val) {
      best_val = val;
      best = &v;
    }
  }
  return *best;
}

ActionVector from_support(int d, std::initializer_list<int> sup) {
  ActionVector a;
  a.bits.assign(d, 0);
  for (int i : sup) a.bits[i] = 1;
  return a;
}

}  // namespace

TEST_CASE("vertex counts match the combinatorial formulas") {
  CHECK(ActionSet::mset(3, 1).vertex_count() == 3);
  CHECK(ActionSet::mset(4, 2).vertex_count() == 6);
  CHECK(ActionSet::mset(4, 2).vertices().size() == 6);
  CHECK(ActionSet::exp2_lower_bound(8).vertex_count() == 12);  // C(4,2)*2
  CHECK(ActionSet::parallel_games(4, 2).vertex_count() == 4);
  CHECK(ActionSet::ranking(1, 2).vertex_count() == 2);
  CHECK(ActionSet::ranking(2, 3).vertex_count() == 6);
  CHECK(ActionSet::mset(8, 8).vertex_count() == 1);
}

TEST_CASE("enumeration is canonical: support-lex order, fixed weight, no dupes") {
  const auto check_set = [](const ActionSet& set) {
    const auto& verts = set.vertices();
    REQUIRE(verts.size() == set.vertex_count());
    for (const auto& v : verts) {
      CHECK(v.dim() == set.dim());
      CHECK(v.weight() == set.weight());
    }
    for (std::size_t k = 1; k < verts.size(); ++k) {
      CHECK(support_less(verts[k - 1], verts[k]));
    }
  };
  check_set(ActionSet::mset(6, 3));
  check_set(ActionSet::parallel_games(6, 2));
  check_set(ActionSet::ranking(2, 4));
  check_set(ActionSet::exp2_lower_bound(8));

  const auto basis = ActionSet::mset(2, 1).vertices();
  CHECK(basis[0] == from_support(2, {0}));
  CHECK(basis[1] == from_support(2, {1}));
}

TEST_CASE("dag paths: diamond graph") {
  // 0 -> {1, 2} -> 3, four edges, two paths of length 2.
  const ActionSet set = ActionSet::dag_paths({{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  CHECK(set.dim() == 4);
  CHECK(set.weight() == 2);
  REQUIRE(set.vertex_count() == 2);
  CHECK(set.vertices()[0] == from_support(4, {0, 2}));
  CHECK(set.vertices()[1] == from_support(4, {1, 3}));
}

TEST_CASE("dag paths: rejects bad graphs") {
  CHECK_THROWS_AS(ActionSet::dag_paths({}), std::invalid_argument);
  // cycle
  CHECK_THROWS_AS(ActionSet::dag_paths({{0, 1}, {1, 2}, {2, 1}, {1, 3}}),
                  std::invalid_argument);
  // unequal path lengths 1 vs 2
  CHECK_THROWS_AS(ActionSet::dag_paths({{0, 1}, {1, 2}, {0, 2}}),
                  std::invalid_argument);
  // dangling edge off any source-sink path
  CHECK_THROWS_AS(ActionSet::dag_paths({{0, 1}, {1, 3}, {0, 3}, {2, 3}}),
                  std::invalid_argument);
  // self loop
  CHECK_THROWS_AS(ActionSet::dag_paths({{0, 0}, {0, 1}}), std::invalid_argument);
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(ActionSet::mset(4, 5), std::invalid_argument);
  CHECK_THROWS_AS(ActionSet::mset(4, 0), std::invalid_argument);
  CHECK_THROWS_AS(ActionSet::exp2_lower_bound(6), std::invalid_argument);
  CHECK_THROWS_AS(ActionSet::exp2_lower_bound(0), std::invalid_argument);
  CHECK_THROWS_AS(ActionSet::parallel_games(7, 2), std::invalid_argument);
  CHECK_THROWS_AS(ActionSet::ranking(3, 2), std::invalid_argument);
}

TEST_CASE("enumeration cap: large sets stay oracle-only") {
  const ActionSet big = ActionSet::mset(40, 20);  // C(40,20) ~ 1.4e11
  CHECK_FALSE(big.enumerable());
  CHECK_THROWS_AS(big.vertices(), std::runtime_error);
  // The oracle still works.
  RngStream rng(5, 0);
  const auto w = random_weights(rng, 40, 0.0, 1.0);
  const ActionVector a = big.linear_minimize(w);
  CHECK(a.weight() == 20);
}

TEST_CASE("linear_minimize: pinned examples") {
  const ActionSet mset31 = ActionSet::mset(3, 1);
  const std::vector<double> w1 = {0.2, 0.1, 0.3};
  CHECK(mset31.linear_minimize(w1) == from_support(3, {1}));

  const ActionSet mset42 = ActionSet::mset(4, 2);
  const std::vector<double> w2 = {0.1, 0.4, 0.2, 0.3};
  CHECK(mset42.linear_minimize(w2) == from_support(4, {0, 2}));
}

TEST_CASE("linear_minimize: zero weights give the first canonical vertex") {
  const std::vector<ActionSet> sets = {
      ActionSet::mset(5, 2), ActionSet::parallel_games(6, 3),
      ActionSet::ranking(2, 3), ActionSet::exp2_lower_bound(8),
      ActionSet::dag_paths({{0, 1}, {0, 2}, {1, 3}, {2, 3}})};
  for (const auto& set : sets) {
    const std::vector<double> zero(set.dim(), 0.0);
    CHECK(set.linear_minimize(zero) == set.vertices().front());
  }
}

TEST_CASE("linear_minimize agrees with brute force on random weights") {
  RngStream rng(42, 0);
  const std::vector<ActionSet> sets = {
      ActionSet::mset(7, 3), ActionSet::parallel_games(8, 2),
      ActionSet::ranking(3, 4), ActionSet::exp2_lower_bound(8),
      ActionSet::dag_paths(
          {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {1, 4}, {2, 4}, {3, 5}, {4, 5}})};
  for (const auto& set : sets) {
    for (int rep = 0; rep < 100; ++rep) {
      const auto w = random_weights(rng, set.dim(), -1.0, 1.0);
      const ActionVector fast = set.linear_minimize(w);
      const ActionVector slow = scan_minimize(set, w);
      CHECK(fast.dot(w) == slow.dot(w));
    }
  }
}

TEST_CASE("linear_minimize: lexicographic tie-breaking on coarse weights") {
  RngStream rng(43, 0);
  const std::vector<ActionSet> sets = {ActionSet::mset(6, 2),
                                       ActionSet::parallel_games(6, 2),
                                       ActionSet::ranking(2, 3),
                                       ActionSet::exp2_lower_bound(8)};
  for (const auto& set : sets) {
    for (int rep = 0; rep < 200; ++rep) {
      std::vector<double> w(set.dim());
      for (double& wi : w) {
        wi = 0.5 * static_cast<double>(static_cast<int>(rng.uniform() * 3.0));
      }
      const ActionVector fast = set.linear_minimize(w);
      const ActionVector slow = scan_minimize(set, w);
      CHECK(fast == slow);  // scan order is canonical, so ties must match too
    }
  }
}

TEST_CASE("conv constraints: vertices and barycenter are feasible") {
  const std::vector<ActionSet> sets = {
      ActionSet::mset(5, 2), ActionSet::parallel_games(6, 3),
      ActionSet::ranking(2, 4), ActionSet::exp2_lower_bound(8),
      ActionSet::dag_paths({{0, 1}, {0, 2}, {1, 3}, {2, 3}})};
  for (const auto& set : sets) {
    const auto& cs = set.conv_constraints();
    std::vector<double> bary(set.dim(), 0.0);
    for (const auto& v : set.vertices()) {
      std::vector<double> x(v.bits.begin(), v.bits.end());
      CHECK(cs.max_violation(x) == 0.0);
      for (int i = 0; i < set.dim(); ++i) bary[i] += x[i];
    }
    for (double& b : bary) b /= static_cast<double>(set.vertex_count());
    CHECK(cs.feasible(bary, 1e-12));
    double total = 0.0;
    for (double b : bary) total += b;
    CHECK(total == doctest::Approx(set.weight()).epsilon(1e-12));
  }
}

TEST_CASE("conv constraints: pinned m-set shape") {
  const ActionSet set = ActionSet::mset(2, 1);
  const auto& cs = set.conv_constraints();
  REQUIRE(cs.rows.size() == 1);
  CHECK(cs.rows[0].equality);
  CHECK(cs.rows[0].rhs == 1.0);
  CHECK(cs.feasible(std::vector<double>{0.25, 0.75}, 0.0));
  CHECK_FALSE(cs.feasible(std::vector<double>{0.5, 0.75}, 1e-9));

  const ActionSet mset42 = ActionSet::mset(4, 2);
  const std::vector<double> mid(4, 0.5);
  CHECK(mset42.conv_constraints().feasible(mid, 0.0));
}

TEST_CASE("index_of round-trips the canonical order") {
  const ActionSet set = ActionSet::exp2_lower_bound(8);
  const auto& verts = set.vertices();
  for (std::size_t k = 0; k < verts.size(); ++k) {
    CHECK(set.index_of(verts[k]) == static_cast<long>(k));
  }
  ActionVector not_in = verts[0];
  not_in.bits[0] ^= 1;
  not_in.bits[1] ^= 1;
  CHECK(set.index_of(not_in) == -1);
}

TEST_CASE("descriptor parsing round-trips") {
  CHECK(ActionSet::parse("mset:d=8,m=2").describe() == "mset:d=8,m=2");
  CHECK(ActionSet::parse("pgames:d=8,m=2").vertex_count() == 16);
  CHECK(ActionSet::parse("exp2lb:d=8").dim() == 8);
  CHECK(ActionSet::parse("ranking:m=2,M=4").vertex_count() == 12);
  CHECK_THROWS_AS(ActionSet::parse("mset:d=8"), std::invalid_argument);
  CHECK_THROWS_AS(ActionSet::parse("torus:d=8"), std::invalid_argument);
  CHECK_THROWS_AS(ActionSet::parse("mset:d=8,m=x"), std::invalid_argument);
}
