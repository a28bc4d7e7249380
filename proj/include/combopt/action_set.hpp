#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace combopt {

// Binary action of fixed weight: bits[i] in {0,1} with exactly m ones.
struct ActionVector {
  std::vector<std::uint8_t> bits;

  int dim() const { return static_cast<int>(bits.size()); }
  int weight() const;
  double dot(std::span<const double> w) const;
  std::vector<int> support() const;

  bool operator==(const ActionVector& o) const { return bits == o.bits; }
};

// Canonical order: supports (sorted coordinate-index lists) compared
// lexicographically, so e1 < e2 < ... and {0,1} < {0,2} < {1,2}.
bool support_less(const ActionVector& a, const ActionVector& b);

struct LinearConstraint {
  std::vector<double> coeffs;
  double rhs = 0.0;
  bool equality = true;  // false: coeffs.x <= rhs
};

// Linear description of Conv(A). The box 0 <= x <= 1 is implicit and is
// checked by feasible()/max_violation() together with the listed rows.
struct ConstraintSystem {
  int dim = 0;
  std::vector<LinearConstraint> rows;

  double max_violation(std::span<const double> x) const;
  bool feasible(std::span<const double> x, double tol) const {
    return max_violation(x) <= tol;
  }
};

enum class SetKind { MSet, DagPaths, Ranking, Exp2LowerBound, ParallelGames };

// Structure exploited by the Bregman projection solver: coordinate blocks
// with disjoint supports, each constrained to sum to `target` under the box
// cap, plus at most one segment block x_up = lambda, x_down = 1 - lambda.
// When water_fillable is false the generic cyclic-projection solver is used.
struct ProjectionPlan {
  struct SumBlock {
    std::vector<int> idx;
    double target = 0.0;
  };
  struct Segment {
    std::vector<int> up, down;
  };
  std::vector<SumBlock> blocks;
  std::optional<Segment> segment;
  bool water_fillable = false;
};

// A combinatorial action family with vertex enumeration, a linear
// minimization oracle and a polyhedral description of its convex hull.
// Immutable after construction; safe to share across concurrent games.
class ActionSet {
 public:
  static constexpr std::uint64_t kDefaultEnumerationCap = 1000000;

  // All C(d, m) weight-m binary vectors.
  static ActionSet mset(int d, int m);
  // m independent rows of d/m coordinates, one pick per row.
  static ActionSet parallel_games(int d, int m);
  // Injective placements of m ranked slots over `num_items` items
  // (matchings of size m in the complete bipartite graph K_{m,M});
  // coordinate (slot i, item j) is index i * num_items + j.
  static ActionSet ranking(int m, int num_items);
  // The suboptimality construction: choose d/4 of the first d/2 coordinates
  // and one of the two intervals of length d/4 in the second half.
  static ActionSet exp2_lower_bound(int d);
  // Source-to-sink paths in a DAG; coordinate i is edge i. Source is vertex
  // 0, sink is the largest vertex id. All paths must have equal length and
  // every edge must lie on at least one path.
  static ActionSet dag_paths(const std::vector<std::pair<int, int>>& edges);
  static ActionSet dag_paths_from_file(const std::string& path);
  // Grammar: mset:d=8,m=2 | pgames:d=8,m=2 | ranking:m=2,M=4 |
  //          exp2lb:d=8 | dag:file=edges.csv
  static ActionSet parse(const std::string& descriptor);

  SetKind kind() const { return kind_; }
  int dim() const { return d_; }
  int weight() const { return m_; }
  std::uint64_t vertex_count() const { return count_; }
  const std::string& describe() const { return descriptor_; }

  bool enumerable(std::uint64_t cap = kDefaultEnumerationCap) const {
    return count_ <= cap;
  }
  // Complete duplicate-free vertex list in canonical support-lex order.
  // Throws when the count exceeds the enumeration cap.
  const std::vector<ActionVector>& vertices() const;
  // Index in canonical order, -1 if absent.
  long index_of(const ActionVector& a) const;

  // argmin over A of a.w; ties resolve to the support-lex smallest vertex.
  ActionVector linear_minimize(std::span<const double> w) const;

  const ConstraintSystem& conv_constraints() const { return constraints_; }
  const ProjectionPlan& projection_plan() const { return plan_; }

  // Parallel-games column count d/m (0 for other kinds).
  int pg_cols() const { return pg_cols_; }
  // Ranking item count M (0 for other kinds).
  int ranking_items() const { return rank_items_; }

 private:
  ActionSet() = default;
  void finalize(std::uint64_t cap);
  void enumerate_into(std::vector<ActionVector>& out) const;

  ActionVector minimize_mset(std::span<const double> w) const;
  ActionVector minimize_parallel_games(std::span<const double> w) const;
  ActionVector minimize_ranking(std::span<const double> w) const;
  ActionVector minimize_exp2_lower_bound(std::span<const double> w) const;
  ActionVector minimize_dag_paths(std::span<const double> w) const;

  SetKind kind_ = SetKind::MSet;
  int d_ = 0;
  int m_ = 0;
  std::uint64_t count_ = 0;
  std::string descriptor_;
  ConstraintSystem constraints_;
  ProjectionPlan plan_;
  std::vector<ActionVector> vertices_;
  bool enumerated_ = false;

  int pg_cols_ = 0;
  int rank_items_ = 0;
  std::vector<std::pair<int, int>> dag_edges_;
  int dag_nodes_ = 0;
  std::vector<std::vector<std::pair<int, int>>> dag_out_;  // node -> (head, edge)
  std::vector<int> dag_topo_;
};

}  // namespace combopt
