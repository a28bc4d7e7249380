#include "combopt/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>
#include <stdexcept>

#include "combopt/exp2.hpp"
#include "combopt/numeric.hpp"
#include "combopt/oracles.hpp"
#include "combopt/osmd.hpp"

#include "json.hpp"

namespace combopt {

GameTrace run_game(Player& player, const Adversary& adversary,
                   const ActionSet& set, long n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("run_game: n must be at least 1");
  const int d = set.dim();

  RngStream player_rng(seed, kPlayerStream);
  RngStream env_rng(seed, kEnvironmentStream);
  std::unique_ptr<Adversary> adv = adversary.clone();

  GameTrace trace;
  trace.seed = seed;
  trace.rows.reserve(n);
  trace.cumulative_loss_vector.assign(d, 0.0);
  double cum_loss = 0.0;
  const bool stochastic = adv->stochastic();
  const double best_mean = stochastic ? adv->best_expected_round_loss() : 0.0;
  const FeedbackMode mode = player.feedback_mode();

  for (long t = 1; t <= n; ++t) {
    try {
      std::vector<double> z = adv->loss_vector(t, env_rng);
      if (static_cast<int>(z.size()) != d) {
        throw std::runtime_error("adversary emitted wrong dimension");
      }
      for (double zi : z) {
        if (!(zi >= 0.0 && zi <= 1.0)) {
          throw std::runtime_error("adversary emitted loss outside [0,1]");
        }
      }
      const ActionVector a = player.act(player_rng);
      const Feedback fb = observe(mode, a, z);
      const double inst = a.dot(z);
      cum_loss += inst;
      for (int i = 0; i < d; ++i) trace.cumulative_loss_vector[i] += z[i];

      double comparator;
      if (stochastic) {
        comparator = static_cast<double>(t) * best_mean;
      } else {
        const ActionVector best =
            set.linear_minimize(trace.cumulative_loss_vector);
        comparator = best.dot(trace.cumulative_loss_vector);
      }

      TraceRow row;
      row.t = t;
      row.action_index = set.index_of(a);
      row.inst_loss = inst;
      row.cum_loss = cum_loss;
      row.cum_regret = cum_loss - comparator;
      trace.rows.push_back(row);

      player.learn(a, fb);
      adv->observe_action(a);
    } catch (const std::exception& e) {
      throw std::runtime_error("round " + std::to_string(t) + ": " + e.what());
    }
  }
  trace.final_loss = cum_loss;
  trace.final_regret = trace.rows.back().cum_regret;
  return trace;
}

RegretReport pseudo_regret(std::span<const GameTrace> traces,
                           const ActionSet& set, const Adversary& adversary,
                           std::optional<double> bound) {
  std::vector<double> per_seed;
  per_seed.reserve(traces.size());
  for (const auto& trace : traces) {
    double realized = 0.0;
    for (const auto& row : trace.rows) realized += row.inst_loss;
    double comparator;
    if (adversary.stochastic()) {
      comparator = static_cast<double>(trace.rows.size()) *
                   adversary.best_expected_round_loss();
    } else {
      const ActionVector best =
          set.linear_minimize(trace.cumulative_loss_vector);
      comparator = best.dot(trace.cumulative_loss_vector);
    }
    per_seed.push_back(realized - comparator);
  }
  return summarize_regret(per_seed, bound);
}

RegretReport summarize_regret(std::span<const double> per_seed,
                              std::optional<double> bound) {
  if (per_seed.empty()) {
    throw std::invalid_argument("summarize_regret: no seeds");
  }
  RegretReport report;
  report.per_seed.assign(per_seed.begin(), per_seed.end());
  double sum = 0.0;
  for (double v : per_seed) sum += v;
  report.mean = sum / static_cast<double>(per_seed.size());
  if (per_seed.size() > 1) {
    double ss = 0.0;
    for (double v : per_seed) ss += (v - report.mean) * (v - report.mean);
    const double var = ss / static_cast<double>(per_seed.size() - 1);
    report.std_error = std::sqrt(var / static_cast<double>(per_seed.size()));
  }
  report.bound = bound;
  report.bound_satisfied = bound.has_value() && report.mean <= *bound;
  return report;
}

std::string PlayerSpec::canonical() const {
  std::ostringstream os;
  os << kind;
  if (kind == "osmd") os << ";legendre=" << legendre;
  os << ";eta=" << eta;
  if (kind == "exp2") os << ";gamma=" << csv_double(gamma);
  os << ";feedback=" << feedback;
  return os.str();
}

double PlayerSpec::resolve_eta(const ActionSet& set, long n) const {
  if (eta == "auto") {
    if (kind != "osmd") {
      throw std::invalid_argument("eta=auto is only defined for the osmd player");
    }
    const LegendreFunction F = LegendreFunction::parse(legendre, set.dim());
    return tuned_eta(F, set.weight(), set.dim(), n);
  }
  const double v = std::stod(eta);
  if (!(v > 0.0)) throw std::invalid_argument("eta must be positive");
  return v;
}

std::optional<double> PlayerSpec::tuned_bound(const ActionSet& set,
                                              long n) const {
  if (kind != "osmd" || eta != "auto") return std::nullopt;
  const LegendreFunction F = LegendreFunction::parse(legendre, set.dim());
  return regret_bound(F, set.weight(), set.dim(), n);
}

std::unique_ptr<Player> PlayerSpec::make(const ActionSet& set, long n) const {
  const FeedbackMode mode = parse_feedback_mode(feedback);
  const double eta_value = resolve_eta(set, n);
  if (kind == "osmd") {
    if (gamma != 0.0) {
      throw std::invalid_argument("osmd: gamma is an exp2 bandit parameter");
    }
    LegendreFunction F = LegendreFunction::parse(legendre, set.dim());
    return std::make_unique<OsmdPlayer>(set, std::move(F), eta_value, mode);
  }
  if (kind == "exp2") {
    return std::make_unique<Exp2Player>(set, eta_value, gamma, mode);
  }
  throw std::invalid_argument("unknown player kind: " + kind);
}

namespace {

PlayerSpec player_spec_from_json(const nlohmann::json& j) {
  PlayerSpec spec;
  spec.kind = j.at("player").get<std::string>();
  if (j.contains("legendre")) spec.legendre = j["legendre"].get<std::string>();
  if (j.contains("eta")) {
    if (j["eta"].is_string()) {
      spec.eta = j["eta"].get<std::string>();
    } else {
      spec.eta = csv_double(j["eta"].get<double>());
    }
  }
  if (j.contains("gamma")) spec.gamma = j["gamma"].get<double>();
  if (j.contains("feedback")) spec.feedback = j["feedback"].get<std::string>();
  return spec;
}

}  // namespace

SweepConfig parse_sweep_config_json(const std::string& json_text) {
  const nlohmann::json j = nlohmann::json::parse(json_text);
  SweepConfig config;
  config.set = j.at("set").get<std::string>();
  config.rounds = j.at("rounds").get<long>();
  if (j.contains("out_dir")) config.out_dir = j["out_dir"].get<std::string>();

  const auto& seeds = j.at("seeds");
  if (seeds.is_array()) {
    for (const auto& s : seeds) config.seeds.push_back(s.get<std::uint64_t>());
  } else {
    const std::uint64_t base = seeds.at("base").get<std::uint64_t>();
    const std::uint64_t count = seeds.at("count").get<std::uint64_t>();
    for (std::uint64_t i = 0; i < count; ++i) config.seeds.push_back(base + i);
  }
  for (const auto& p : j.at("players")) {
    config.players.push_back(player_spec_from_json(p));
  }
  for (const auto& a : j.at("adversaries")) {
    config.adversaries.push_back(a.get<std::string>());
  }
  return config;
}

SweepConfig parse_sweep_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_sweep_config_json(buf.str());
}

std::string csv_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string sanitize_id(std::string s) {
  for (char& c : s) {
    if (c == ',') c = ';';
    if (c == '/' || c == '\\') c = '_';
  }
  return s;
}

std::string default_out_dir() {
  if (const char* env = std::getenv("COMBOPT_OUT_DIR")) {
    if (*env) return env;
  }
  return ".";
}

void write_cell_csv(const std::string& path, const std::string& cell_id,
                    std::span<const GameTrace> traces) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "run_id,seed,t,action_index,inst_loss,cum_loss,cum_regret\n";
  for (const auto& trace : traces) {
    for (const auto& row : trace.rows) {
      out << cell_id << ',' << trace.seed << ',' << row.t << ','
          << row.action_index << ',' << csv_double(row.inst_loss) << ','
          << csv_double(row.cum_loss) << ',' << csv_double(row.cum_regret)
          << '\n';
    }
  }
}

std::vector<CellResult> run_sweep(const SweepConfig& config) {
  if (config.seeds.empty()) {
    throw std::invalid_argument("sweep: empty seed list");
  }
  if (config.players.empty() || config.adversaries.empty()) {
    throw std::invalid_argument("sweep: needs at least one player and adversary");
  }
  if (config.rounds < 1) throw std::invalid_argument("sweep: rounds must be >= 1");

  const ActionSet set = ActionSet::parse(config.set);
  const std::string out_dir =
      config.out_dir.empty() ? default_out_dir() : config.out_dir;
  std::filesystem::create_directories(out_dir);

  std::vector<CellResult> results;
  for (const auto& player_spec : config.players) {
    for (const auto& adversary_desc : config.adversaries) {
      CellResult cell;
      cell.player = player_spec.canonical();
      cell.adversary = adversary_desc;
      cell.cell_id =
          sanitize_id(cell.player) + "__" + sanitize_id(adversary_desc);
      cell.eta = player_spec.resolve_eta(set, config.rounds);
      cell.gamma = player_spec.gamma;
      cell.n = config.rounds;

      std::vector<std::future<GameTrace>> futures;
      futures.reserve(config.seeds.size());
      for (std::uint64_t seed : config.seeds) {
        futures.push_back(std::async(std::launch::async, [&, seed] {
          auto player = player_spec.make(set, config.rounds);
          auto adversary = make_adversary(adversary_desc, set);
          return run_game(*player, *adversary, set, config.rounds, seed);
        }));
      }
      std::vector<GameTrace> traces;
      traces.reserve(futures.size());
      for (auto& f : futures) traces.push_back(f.get());

      const auto adversary = make_adversary(adversary_desc, set);
      cell.report = pseudo_regret(traces, set, *adversary,
                                  player_spec.tuned_bound(set, config.rounds));
      if (player_spec.kind == "exp2" && player_spec.feedback == "full" &&
          adversary_desc == "alternating" &&
          set.kind() == SetKind::Exp2LowerBound && config.rounds % 2 == 0) {
        cell.closed_form =
            exp2_alternating_regret(set.dim(), config.rounds, cell.eta);
      }

      cell.trace_path = out_dir + "/cell_" + cell.cell_id + ".csv";
      write_cell_csv(cell.trace_path, cell.cell_id, traces);
      results.push_back(std::move(cell));
    }
  }

  std::ofstream summary(out_dir + "/summary.csv", std::ios::binary);
  if (!summary) throw std::runtime_error("cannot write summary.csv");
  summary << "cell_id,player,adversary,eta,gamma,n,seeds,mean_regret,stderr,"
             "bound,bound_satisfied\n";
  for (const auto& cell : results) {
    summary << cell.cell_id << ',' << sanitize_id(cell.player) << ','
            << sanitize_id(cell.adversary) << ',' << csv_double(cell.eta)
            << ',' << csv_double(cell.gamma) << ',' << cell.n << ','
            << cell.report.per_seed.size() << ','
            << csv_double(cell.report.mean) << ','
            << csv_double(cell.report.std_error) << ',';
    if (cell.report.bound) {
      summary << csv_double(*cell.report.bound) << ','
              << (cell.report.bound_satisfied ? "true" : "false");
    } else if (cell.closed_form) {
      summary << csv_double(*cell.closed_form) << ',';
    } else {
      summary << ',';
    }
    summary << '\n';
  }
  return results;
}

}  // namespace combopt
