#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "combopt/action_set.hpp"
#include "combopt/environments.hpp"
#include "combopt/player.hpp"

namespace combopt {

struct TraceRow {
  long t = 0;
  long action_index = -1;
  double inst_loss = 0.0;
  double cum_loss = 0.0;
  double cum_regret = 0.0;
};

struct GameTrace {
  std::uint64_t seed = 0;
  std::vector<TraceRow> rows;
  std::vector<double> cumulative_loss_vector;  // sum of the z_t
  double final_loss = 0.0;
  double final_regret = 0.0;
};

// One seeded game under simultaneous-move semantics: the round's loss
// vector is generated before the player's action is drawn. The player and
// the environment consume independent streams of the master seed, so traces
// are bit-reproducible. cum_regret is measured against the running
// comparator: the best fixed action on the realized losses for oblivious
// adversaries, the exact optimal mean for stochastic ones.
GameTrace run_game(Player& player, const Adversary& adversary,
                   const ActionSet& set, long n, std::uint64_t seed);

struct RegretReport {
  std::vector<double> per_seed;
  double mean = 0.0;
  double std_error = 0.0;
  std::optional<double> bound;
  bool bound_satisfied = false;
};

RegretReport summarize_regret(std::span<const double> per_seed,
                              std::optional<double> bound);

// Recomputes per-seed pseudo-regret from stored traces (realized loss minus
// the comparator: best fixed action on the cumulative losses for oblivious
// adversaries, exact optimal mean for stochastic ones) and aggregates.
RegretReport pseudo_regret(std::span<const GameTrace> traces,
                           const ActionSet& set, const Adversary& adversary,
                           std::optional<double> bound = std::nullopt);

// Player configuration mirroring the CLI flags.
struct PlayerSpec {
  std::string kind = "osmd";            // osmd | exp2
  std::string legendre = "negentropy";  // osmd only
  std::string eta = "auto";             // auto (osmd only) | numeric value
  double gamma = 0.0;                   // exp2 bandit exploration mix
  std::string feedback = "semi";        // full | semi | bandit

  std::string canonical() const;
  double resolve_eta(const ActionSet& set, long n) const;
  std::optional<double> tuned_bound(const ActionSet& set, long n) const;
  std::unique_ptr<Player> make(const ActionSet& set, long n) const;
};

struct SweepConfig {
  std::string set;
  long rounds = 0;
  std::vector<std::uint64_t> seeds;
  std::vector<PlayerSpec> players;
  std::vector<std::string> adversaries;
  std::string out_dir;  // empty: $COMBOPT_OUT_DIR, else "."
};

SweepConfig parse_sweep_config_json(const std::string& json_text);
SweepConfig parse_sweep_config_file(const std::string& path);

struct CellResult {
  std::string cell_id;
  std::string player;
  std::string adversary;
  double eta = 0.0;
  double gamma = 0.0;
  long n = 0;
  RegretReport report;
  // Exact expected regret when a closed form covers the cell (full-info
  // exp2 against the alternating adversary on its witness set); lands in
  // the summary's bound column as a reference value, with the satisfied
  // flag reserved for tuned guarantees.
  std::optional<double> closed_form;
  std::string trace_path;
};

// Runs every (player, adversary) cell over all seeds (seeds in parallel,
// merged back in order), writes one trace CSV per cell plus summary.csv,
// and returns the summary rows. Output is byte-deterministic for a fixed
// config.
std::vector<CellResult> run_sweep(const SweepConfig& config);

// Fixed "%.12g" formatting shared by all CSV writers.
std::string csv_double(double v);
// Identifier-safe form of a descriptor (',' -> ';', path separators -> '_').
std::string sanitize_id(std::string s);
std::string default_out_dir();
void write_cell_csv(const std::string& path, const std::string& cell_id,
                    std::span<const GameTrace> traces);

}  // namespace combopt
