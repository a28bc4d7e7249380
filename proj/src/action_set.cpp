#include "combopt/action_set.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace combopt {

namespace {

constexpr std::uint64_t kCountSaturated =
    std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kCountSaturated / b) return kCountSaturated;
  return a * b;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  if (a > kCountSaturated - b) return kCountSaturated;
  return a + b;
}

std::uint64_t binomial_count(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t c = 1;
  for (int i = 1; i <= k; ++i) {
    c = sat_mul(c, static_cast<std::uint64_t>(n - k + i));
    if (c == kCountSaturated) return c;
    c /= static_cast<std::uint64_t>(i);
  }
  return c;
}

// Shortest-augmenting-path assignment (Jonker-Volgenant style), minimizing
// over injective row -> column maps. Requires rows <= cols.
std::pair<double, std::vector<int>> min_cost_assignment(
    const std::vector<std::vector<double>>& a) {
  const int n = static_cast<int>(a.size());
  if (n == 0) return {0.0, {}};
  const int m = static_cast<int>(a[0].size());
  const double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<int> p(m + 1, 0), way(m + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(m + 1, kInf);
    std::vector<char> used(m + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      int j1 = -1;
      double delta = kInf;
      for (int j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = a[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> row_to_col(n, -1);
  double value = 0.0;
  for (int j = 1; j <= m; ++j) {
    if (p[j]) {
      row_to_col[p[j] - 1] = j - 1;
      value += a[p[j] - 1][j - 1];
    }
  }
  return {value, row_to_col};
}

int parse_int_param(const std::string& v, const std::string& what) {
  std::size_t pos = 0;
  int out = 0;
  try {
    out = std::stoi(v, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad integer for " + what + ": " + v);
  }
  if (pos != v.size()) {
    throw std::invalid_argument("bad integer for " + what + ": " + v);
  }
  return out;
}

}  // namespace

int ActionVector::weight() const {
  int w = 0;
  for (auto b : bits) w += b;
  return w;
}

double ActionVector::dot(std::span<const double> w) const {
  assert(w.size() == bits.size());
  double s = 0.0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) s += w[i];
  }
  return s;
}

std::vector<int> ActionVector::support() const {
  std::vector<int> s;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) s.push_back(static_cast<int>(i));
  }
  return s;
}

bool support_less(const ActionVector& a, const ActionVector& b) {
  assert(a.bits.size() == b.bits.size());
  for (std::size_t i = 0; i < a.bits.size(); ++i) {
    if (a.bits[i] != b.bits[i]) return a.bits[i] > b.bits[i];
  }
  return false;
}

double ConstraintSystem::max_violation(std::span<const double> x) const {
  assert(static_cast<int>(x.size()) == dim);
  double worst = 0.0;
  for (double xi : x) {
    worst = std::max(worst, -xi);
    worst = std::max(worst, xi - 1.0);
  }
  for (const auto& row : rows) {
    double lhs = 0.0;
    for (int i = 0; i < dim; ++i) lhs += row.coeffs[i] * x[i];
    if (row.equality) {
      worst = std::max(worst, std::abs(lhs - row.rhs));
    } else {
      worst = std::max(worst, lhs - row.rhs);
    }
  }
  return worst;
}

ActionSet ActionSet::mset(int d, int m) {
  if (d < 1) throw std::invalid_argument("mset: d must be positive");
  if (m < 1 || m > d) throw std::invalid_argument("mset: need 1 <= m <= d");
  ActionSet s;
  s.kind_ = SetKind::MSet;
  s.d_ = d;
  s.m_ = m;
  s.count_ = binomial_count(d, m);
  s.descriptor_ = "mset:d=" + std::to_string(d) + ",m=" + std::to_string(m);

  s.constraints_.dim = d;
  LinearConstraint sum;
  sum.coeffs.assign(d, 1.0);
  sum.rhs = m;
  s.constraints_.rows.push_back(std::move(sum));

  ProjectionPlan::SumBlock block;
  block.idx.resize(d);
  std::iota(block.idx.begin(), block.idx.end(), 0);
  block.target = m;
  s.plan_.blocks.push_back(std::move(block));
  s.plan_.water_fillable = true;

  s.finalize(kDefaultEnumerationCap);
  return s;
}

ActionSet ActionSet::parallel_games(int d, int m) {
  if (d < 1 || m < 1) throw std::invalid_argument("pgames: d, m must be positive");
  if (d % m != 0) throw std::invalid_argument("pgames: d must be a multiple of m");
  ActionSet s;
  s.kind_ = SetKind::ParallelGames;
  s.d_ = d;
  s.m_ = m;
  s.pg_cols_ = d / m;
  s.count_ = 1;
  for (int i = 0; i < m; ++i) s.count_ = sat_mul(s.count_, s.pg_cols_);
  s.descriptor_ = "pgames:d=" + std::to_string(d) + ",m=" + std::to_string(m);

  s.constraints_.dim = d;
  for (int r = 0; r < m; ++r) {
    LinearConstraint row;
    row.coeffs.assign(d, 0.0);
    for (int j = 0; j < s.pg_cols_; ++j) row.coeffs[r * s.pg_cols_ + j] = 1.0;
    row.rhs = 1.0;
    s.constraints_.rows.push_back(std::move(row));

    ProjectionPlan::SumBlock block;
    for (int j = 0; j < s.pg_cols_; ++j) block.idx.push_back(r * s.pg_cols_ + j);
    block.target = 1.0;
    s.plan_.blocks.push_back(std::move(block));
  }
  s.plan_.water_fillable = true;

  s.finalize(kDefaultEnumerationCap);
  return s;
}

ActionSet ActionSet::ranking(int m, int num_items) {
  if (m < 1 || num_items < 1) {
    throw std::invalid_argument("ranking: m, M must be positive");
  }
  if (m > num_items) throw std::invalid_argument("ranking: need m <= M");
  ActionSet s;
  s.kind_ = SetKind::Ranking;
  s.d_ = m * num_items;
  s.m_ = m;
  s.rank_items_ = num_items;
  s.count_ = 1;
  for (int i = 0; i < m; ++i) {
    s.count_ = sat_mul(s.count_, static_cast<std::uint64_t>(num_items - i));
  }
  s.descriptor_ =
      "ranking:m=" + std::to_string(m) + ",M=" + std::to_string(num_items);

  s.constraints_.dim = s.d_;
  for (int r = 0; r < m; ++r) {
    LinearConstraint row;
    row.coeffs.assign(s.d_, 0.0);
    for (int j = 0; j < num_items; ++j) row.coeffs[r * num_items + j] = 1.0;
    row.rhs = 1.0;
    s.constraints_.rows.push_back(std::move(row));
  }
  for (int j = 0; j < num_items; ++j) {
    LinearConstraint col;
    col.coeffs.assign(s.d_, 0.0);
    for (int r = 0; r < m; ++r) col.coeffs[r * num_items + j] = 1.0;
    col.rhs = 1.0;
    col.equality = false;
    s.constraints_.rows.push_back(std::move(col));
  }
  s.plan_.water_fillable = false;

  s.finalize(kDefaultEnumerationCap);
  return s;
}

ActionSet ActionSet::exp2_lower_bound(int d) {
  if (d < 4 || d % 4 != 0) {
    throw std::invalid_argument("exp2lb: d must be a positive multiple of 4");
  }
  ActionSet s;
  s.kind_ = SetKind::Exp2LowerBound;
  s.d_ = d;
  s.m_ = d / 2;  // d/4 free picks plus one interval of length d/4
  s.count_ = sat_mul(binomial_count(d / 2, d / 4), 2);
  s.descriptor_ = "exp2lb:d=" + std::to_string(d);

  const int half = d / 2;
  const int quarter = d / 4;
  s.constraints_.dim = d;
  LinearConstraint head;
  head.coeffs.assign(d, 0.0);
  for (int i = 0; i < half; ++i) head.coeffs[i] = 1.0;
  head.rhs = quarter;
  s.constraints_.rows.push_back(std::move(head));
  // Both intervals move as one point: x_i = lambda on the first interval,
  // x_j = 1 - lambda on the second.
  for (int i = half; i + 1 < half + quarter; ++i) {
    LinearConstraint eq;
    eq.coeffs.assign(d, 0.0);
    eq.coeffs[i] = 1.0;
    eq.coeffs[i + 1] = -1.0;
    eq.rhs = 0.0;
    s.constraints_.rows.push_back(std::move(eq));
  }
  for (int i = half + quarter; i + 1 < d; ++i) {
    LinearConstraint eq;
    eq.coeffs.assign(d, 0.0);
    eq.coeffs[i] = 1.0;
    eq.coeffs[i + 1] = -1.0;
    eq.rhs = 0.0;
    s.constraints_.rows.push_back(std::move(eq));
  }
  LinearConstraint pair;
  pair.coeffs.assign(d, 0.0);
  pair.coeffs[half] = 1.0;
  pair.coeffs[half + quarter] = 1.0;
  pair.rhs = 1.0;
  s.constraints_.rows.push_back(std::move(pair));

  ProjectionPlan::SumBlock block;
  for (int i = 0; i < half; ++i) block.idx.push_back(i);
  block.target = quarter;
  s.plan_.blocks.push_back(std::move(block));
  ProjectionPlan::Segment seg;
  for (int i = half; i < half + quarter; ++i) seg.up.push_back(i);
  for (int i = half + quarter; i < d; ++i) seg.down.push_back(i);
  s.plan_.segment = std::move(seg);
  s.plan_.water_fillable = true;

  s.finalize(kDefaultEnumerationCap);
  return s;
}

ActionSet ActionSet::dag_paths(const std::vector<std::pair<int, int>>& edges) {
  if (edges.empty()) throw std::invalid_argument("dag: empty edge list");
  int max_node = 0;
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0) throw std::invalid_argument("dag: negative vertex id");
    if (u == v) throw std::invalid_argument("dag: self loop");
    max_node = std::max(max_node, std::max(u, v));
  }
  ActionSet s;
  s.kind_ = SetKind::DagPaths;
  s.d_ = static_cast<int>(edges.size());
  s.dag_edges_ = edges;
  s.dag_nodes_ = max_node + 1;
  s.descriptor_ = "dag:edges=" + std::to_string(edges.size());

  const int source = 0;
  const int sink = max_node;
  s.dag_out_.assign(s.dag_nodes_, {});
  std::vector<std::vector<std::pair<int, int>>> in(s.dag_nodes_);
  for (int e = 0; e < s.d_; ++e) {
    s.dag_out_[edges[e].first].push_back({edges[e].second, e});
    in[edges[e].second].push_back({edges[e].first, e});
  }

  // Kahn topological order; leftovers indicate a cycle.
  std::vector<int> indeg(s.dag_nodes_, 0);
  for (const auto& [u, v] : edges) indeg[v]++;
  std::queue<int> q;
  for (int v = 0; v < s.dag_nodes_; ++v) {
    if (indeg[v] == 0) q.push(v);
  }
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    s.dag_topo_.push_back(v);
    for (const auto& [to, e] : s.dag_out_[v]) {
      if (--indeg[to] == 0) q.push(to);
    }
  }
  if (static_cast<int>(s.dag_topo_.size()) != s.dag_nodes_) {
    throw std::invalid_argument("dag: graph contains a cycle");
  }

  // Reachability both ways; every edge must sit on a source-sink path,
  // otherwise its coordinate is 0 on the whole hull and the Legendre
  // domains never intersect Conv(A).
  std::vector<char> from_src(s.dag_nodes_, 0), to_sink(s.dag_nodes_, 0);
  from_src[source] = 1;
  for (int v : s.dag_topo_) {
    if (!from_src[v]) continue;
    for (const auto& [to, e] : s.dag_out_[v]) from_src[to] = 1;
  }
  to_sink[sink] = 1;
  for (auto it = s.dag_topo_.rbegin(); it != s.dag_topo_.rend(); ++it) {
    if (!to_sink[*it]) continue;
    for (const auto& [from, e] : in[*it]) to_sink[from] = 1;
  }
  if (!from_src[sink]) throw std::invalid_argument("dag: no source-sink path");
  for (const auto& [u, v] : edges) {
    if (!from_src[u] || !to_sink[v]) {
      throw std::invalid_argument("dag: edge (" + std::to_string(u) + "," +
                                  std::to_string(v) +
                                  ") lies on no source-sink path");
    }
  }

  // All paths must share one length; min and max path lengths agree iff so.
  std::vector<int> lmin(s.dag_nodes_, std::numeric_limits<int>::max());
  std::vector<int> lmax(s.dag_nodes_, -1);
  lmin[source] = lmax[source] = 0;
  for (int v : s.dag_topo_) {
    if (lmax[v] < 0) continue;
    for (const auto& [to, e] : s.dag_out_[v]) {
      lmin[to] = std::min(lmin[to], lmin[v] + 1);
      lmax[to] = std::max(lmax[to], lmax[v] + 1);
    }
  }
  if (lmin[sink] != lmax[sink]) {
    throw std::invalid_argument("dag: paths of unequal length (" +
                                std::to_string(lmin[sink]) + " vs " +
                                std::to_string(lmax[sink]) + ")");
  }
  s.m_ = lmin[sink];

  std::vector<std::uint64_t> paths(s.dag_nodes_, 0);
  paths[source] = 1;
  for (int v : s.dag_topo_) {
    if (paths[v] == 0) continue;
    for (const auto& [to, e] : s.dag_out_[v]) {
      paths[to] = sat_add(paths[to], paths[v]);
    }
  }
  s.count_ = paths[sink];

  // Unit flow conservation rows describe the hull of path indicators.
  s.constraints_.dim = s.d_;
  for (int v = 0; v < s.dag_nodes_; ++v) {
    LinearConstraint row;
    row.coeffs.assign(s.d_, 0.0);
    for (const auto& [to, e] : s.dag_out_[v]) row.coeffs[e] += 1.0;
    for (const auto& [from, e] : in[v]) row.coeffs[e] -= 1.0;
    row.rhs = (v == source) ? 1.0 : (v == sink ? -1.0 : 0.0);
    s.constraints_.rows.push_back(std::move(row));
  }
  s.plan_.water_fillable = false;

  s.finalize(kDefaultEnumerationCap);
  return s;
}

ActionSet ActionSet::dag_paths_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("dag: cannot open " + path);
  std::vector<std::pair<int, int>> edges;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    int u, v;
    if (!(ss >> u >> v)) {
      throw std::invalid_argument("dag: bad edge line: " + line);
    }
    edges.push_back({u, v});
  }
  ActionSet s = dag_paths(edges);
  s.descriptor_ = "dag:file=" + path;
  return s;
}

ActionSet ActionSet::parse(const std::string& descriptor) {
  const auto colon = descriptor.find(':');
  const std::string kind = descriptor.substr(0, colon);
  std::string rest =
      colon == std::string::npos ? "" : descriptor.substr(colon + 1);

  if (kind == "dag") {
    const std::string prefix = "file=";
    if (rest.rfind(prefix, 0) != 0) {
      throw std::invalid_argument("dag descriptor needs file=<path>");
    }
    return dag_paths_from_file(rest.substr(prefix.size()));
  }

  std::map<std::string, std::string> kv;
  std::istringstream ss(rest);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("bad set parameter: " + item);
    }
    kv[item.substr(0, eq)] = item.substr(eq + 1);
  }
  auto need = [&](const std::string& key) -> int {
    auto it = kv.find(key);
    if (it == kv.end()) {
      throw std::invalid_argument("set descriptor missing " + key + ": " +
                                  descriptor);
    }
    return parse_int_param(it->second, key);
  };

  if (kind == "mset") return mset(need("d"), need("m"));
  if (kind == "pgames") return parallel_games(need("d"), need("m"));
  if (kind == "ranking") return ranking(need("m"), need("M"));
  if (kind == "exp2lb") return exp2_lower_bound(need("d"));
  throw std::invalid_argument("unknown set kind: " + kind);
}

void ActionSet::finalize(std::uint64_t cap) {
  if (count_ == 0) throw std::invalid_argument(descriptor_ + ": empty action set");
  if (count_ <= cap) {
    enumerate_into(vertices_);
    if (vertices_.size() != count_) {
      throw std::logic_error(descriptor_ + ": enumeration size " +
                             std::to_string(vertices_.size()) +
                             " does not match count " + std::to_string(count_));
    }
    assert(std::is_sorted(vertices_.begin(), vertices_.end(), support_less));
    enumerated_ = true;
  }
}

const std::vector<ActionVector>& ActionSet::vertices() const {
  if (!enumerated_) {
    throw std::runtime_error(descriptor_ + ": vertex count " +
                             std::to_string(count_) +
                             " exceeds the enumeration cap");
  }
  return vertices_;
}

long ActionSet::index_of(const ActionVector& a) const {
  if (!enumerated_) return -1;
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), a, support_less);
  if (it == vertices_.end() || !(*it == a)) return -1;
  return static_cast<long>(it - vertices_.begin());
}

void ActionSet::enumerate_into(std::vector<ActionVector>& out) const {
  out.clear();
  out.reserve(count_);
  auto from_support = [this](std::span<const int> sup) {
    ActionVector a;
    a.bits.assign(d_, 0);
    for (int i : sup) a.bits[i] = 1;
    return a;
  };

  switch (kind_) {
    case SetKind::MSet: {
      std::vector<int> idx(m_);
      std::iota(idx.begin(), idx.end(), 0);
      while (true) {
        out.push_back(from_support(idx));
        int pos = m_ - 1;
        while (pos >= 0 && idx[pos] == d_ - m_ + pos) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (int i = pos + 1; i < m_; ++i) idx[i] = idx[i - 1] + 1;
      }
      break;
    }
    case SetKind::ParallelGames: {
      std::vector<int> pick(m_, 0);
      while (true) {
        std::vector<int> sup(m_);
        for (int r = 0; r < m_; ++r) sup[r] = r * pg_cols_ + pick[r];
        out.push_back(from_support(sup));
        int pos = m_ - 1;
        while (pos >= 0 && pick[pos] == pg_cols_ - 1) pick[pos--] = 0;
        if (pos < 0) break;
        ++pick[pos];
      }
      break;
    }
    case SetKind::Ranking: {
      std::vector<int> pick(m_, -1);
      std::vector<char> used(rank_items_, 0);
      int slot = 0;
      while (slot >= 0) {
        if (slot == m_) {
          std::vector<int> sup(m_);
          for (int r = 0; r < m_; ++r) sup[r] = r * rank_items_ + pick[r];
          out.push_back(from_support(sup));
          --slot;
          continue;
        }
        if (pick[slot] >= 0) used[pick[slot]] = 0;
        int j = pick[slot] + 1;
        while (j < rank_items_ && used[j]) ++j;
        if (j == rank_items_) {
          pick[slot] = -1;
          --slot;
          continue;
        }
        pick[slot] = j;
        used[j] = 1;
        ++slot;
      }
      break;
    }
    case SetKind::Exp2LowerBound: {
      const int half = d_ / 2;
      const int quarter = d_ / 4;
      std::vector<int> idx(quarter);
      std::iota(idx.begin(), idx.end(), 0);
      while (true) {
        for (int interval = 0; interval < 2; ++interval) {
          std::vector<int> sup(idx.begin(), idx.end());
          const int start = half + interval * quarter;
          for (int i = 0; i < quarter; ++i) sup.push_back(start + i);
          out.push_back(from_support(sup));
        }
        int pos = quarter - 1;
        while (pos >= 0 && idx[pos] == half - quarter + pos) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (int i = pos + 1; i < quarter; ++i) idx[i] = idx[i - 1] + 1;
      }
      break;
    }
    case SetKind::DagPaths: {
      const int sink = dag_nodes_ - 1;
      std::vector<int> stack_edge;
      std::vector<int> sup;
      // Depth-first over edges; sorting afterwards restores canonical order.
      std::vector<std::pair<int, std::size_t>> frames{{0, 0}};
      while (!frames.empty()) {
        auto& [node, next] = frames.back();
        if (node == sink) {
          ActionVector a;
          a.bits.assign(d_, 0);
          for (int e : stack_edge) a.bits[e] = 1;
          out.push_back(std::move(a));
          frames.pop_back();
          if (!stack_edge.empty()) stack_edge.pop_back();
          continue;
        }
        if (next == dag_out_[node].size()) {
          frames.pop_back();
          if (!stack_edge.empty()) stack_edge.pop_back();
          continue;
        }
        const auto [to, e] = dag_out_[node][next++];
        stack_edge.push_back(e);
        frames.push_back({to, 0});
      }
      std::sort(out.begin(), out.end(), support_less);
      break;
    }
  }
}

ActionVector ActionSet::linear_minimize(std::span<const double> w) const {
  if (static_cast<int>(w.size()) != d_) {
    throw std::invalid_argument("linear_minimize: weight vector has dim " +
                                std::to_string(w.size()) + ", expected " +
                                std::to_string(d_));
  }
  for (double wi : w) {
    if (!std::isfinite(wi)) {
      throw std::invalid_argument("linear_minimize: non-finite weight");
    }
  }
  switch (kind_) {
    case SetKind::MSet:
      return minimize_mset(w);
    case SetKind::ParallelGames:
      return minimize_parallel_games(w);
    case SetKind::Ranking:
      return minimize_ranking(w);
    case SetKind::Exp2LowerBound:
      return minimize_exp2_lower_bound(w);
    case SetKind::DagPaths:
      return minimize_dag_paths(w);
  }
  throw std::logic_error("unreachable");
}

ActionVector ActionSet::minimize_mset(std::span<const double> w) const {
  // Greedy on (w_i, i): forced sub-threshold coordinates plus the smallest
  // indices inside the tie class, which is the support-lex smallest argmin.
  std::vector<int> order(d_);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return w[a] < w[b]; });
  ActionVector out;
  out.bits.assign(d_, 0);
  for (int i = 0; i < m_; ++i) out.bits[order[i]] = 1;
  return out;
}

ActionVector ActionSet::minimize_parallel_games(std::span<const double> w) const {
  ActionVector out;
  out.bits.assign(d_, 0);
  for (int r = 0; r < m_; ++r) {
    int best = 0;
    for (int j = 1; j < pg_cols_; ++j) {
      if (w[r * pg_cols_ + j] < w[r * pg_cols_ + best]) best = j;
    }
    out.bits[r * pg_cols_ + best] = 1;
  }
  return out;
}

ActionVector ActionSet::minimize_exp2_lower_bound(std::span<const double> w) const {
  const int half = d_ / 2;
  const int quarter = d_ / 4;
  std::vector<int> order(half);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return w[a] < w[b]; });
  double sum1 = 0.0, sum2 = 0.0;
  for (int i = 0; i < quarter; ++i) {
    sum1 += w[half + i];
    sum2 += w[half + quarter + i];
  }
  ActionVector out;
  out.bits.assign(d_, 0);
  for (int i = 0; i < quarter; ++i) out.bits[order[i]] = 1;
  const int start = (sum1 <= sum2) ? half : half + quarter;
  for (int i = 0; i < quarter; ++i) out.bits[start + i] = 1;
  return out;
}

ActionVector ActionSet::minimize_ranking(std::span<const double> w) const {
  const int M = rank_items_;
  std::vector<std::vector<double>> cost(m_, std::vector<double>(M));
  for (int i = 0; i < m_; ++i) {
    for (int j = 0; j < M; ++j) cost[i][j] = w[i * M + j];
  }
  const auto [best_value, initial] = min_cost_assignment(cost);
  (void)initial;
  const double tol = 1e-9 * (1.0 + std::abs(best_value));

  // Fix slots in order to the smallest item that still allows an optimal
  // completion; this pins the support-lex smallest argmin.
  std::vector<char> used(M, 0);
  std::vector<int> chosen(m_, -1);
  double prefix = 0.0;
  for (int i = 0; i < m_; ++i) {
    for (int j = 0; j < M; ++j) {
      if (used[j]) continue;
      std::vector<std::vector<double>> rest;
      std::vector<int> cols;
      for (int jj = 0; jj < M; ++jj) {
        if (!used[jj] && jj != j) cols.push_back(jj);
      }
      for (int ii = i + 1; ii < m_; ++ii) {
        std::vector<double> row;
        row.reserve(cols.size());
        for (int jj : cols) row.push_back(cost[ii][jj]);
        rest.push_back(std::move(row));
      }
      const double rest_value =
          rest.empty() ? 0.0 : min_cost_assignment(rest).first;
      if (prefix + cost[i][j] + rest_value <= best_value + tol) {
        chosen[i] = j;
        used[j] = 1;
        prefix += cost[i][j];
        break;
      }
    }
    if (chosen[i] < 0) throw std::logic_error("ranking: refinement failed");
  }

  ActionVector out;
  out.bits.assign(d_, 0);
  for (int i = 0; i < m_; ++i) out.bits[i * M + chosen[i]] = 1;
  return out;
}

ActionVector ActionSet::minimize_dag_paths(std::span<const double> w) const {
  // Topological DP; ties between equal-cost prefixes resolve to the
  // support-lex smaller edge set, which composes under extension.
  const int sink = dag_nodes_ - 1;
  struct Best {
    double cost = 0.0;
    std::vector<int> sup;
    bool reached = false;
  };
  std::vector<Best> best(dag_nodes_);
  best[0].reached = true;
  for (int v : dag_topo_) {
    if (!best[v].reached) continue;
    for (const auto& [to, e] : dag_out_[v]) {
      const double cand_cost = best[v].cost + w[e];
      std::vector<int> cand_sup = best[v].sup;
      cand_sup.insert(std::lower_bound(cand_sup.begin(), cand_sup.end(), e), e);
      Best& b = best[to];
      bool take = false;
      if (!b.reached || cand_cost < b.cost) {
        take = true;
      } else if (cand_cost == b.cost) {
        take = std::lexicographical_compare(cand_sup.begin(), cand_sup.end(),
                                            b.sup.begin(), b.sup.end());
      }
      if (take) {
        b.cost = cand_cost;
        b.sup = std::move(cand_sup);
        b.reached = true;
      }
    }
  }
  assert(best[sink].reached);
  ActionVector out;
  out.bits.assign(d_, 0);
  for (int e : best[sink].sup) out.bits[e] = 1;
  return out;
}

}  // namespace combopt
