// Command-line front end: single games, parameter sweeps, tuned bounds and
// the oracle verification suite.
//
//   combopt run    --set mset:d=8,m=2 --player osmd --legendre inf:q=2
//                  --eta auto --feedback semi --adversary epsskew:eps=0.25
//                  --rounds 5000 --seed 1 [--out DIR]
//   combopt sweep  --config sweep.json [--out DIR]
//   combopt bound  --legendre negentropy --m 2 --d 8 --n 5000 [--reference]
//   combopt verify [--out report.csv]
//
// The default output directory is $COMBOPT_OUT_DIR, falling back to ".".

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "combopt/harness.hpp"
#include "combopt/oracles.hpp"
#include "combopt/osmd.hpp"

namespace {

int cmd_run(const std::string& set_desc, const combopt::PlayerSpec& spec,
            const std::string& adversary_desc, long rounds,
            std::uint64_t seed, std::string out_dir) {
  const combopt::ActionSet set = combopt::ActionSet::parse(set_desc);
  auto player = spec.make(set, rounds);
  auto adversary = combopt::make_adversary(adversary_desc, set);
  const combopt::GameTrace trace =
      combopt::run_game(*player, *adversary, set, rounds, seed);

  if (out_dir.empty()) out_dir = combopt::default_out_dir();
  std::filesystem::create_directories(out_dir);
  const std::string cell_id = combopt::sanitize_id(spec.canonical()) + "__" +
                              combopt::sanitize_id(adversary_desc);
  const std::string path =
      out_dir + "/run_" + cell_id + "_seed" + std::to_string(seed) + ".csv";
  combopt::write_cell_csv(path, cell_id, {&trace, 1});

  std::printf("%s seed=%llu n=%ld cum_loss=%s regret=%s trace=%s\n",
              cell_id.c_str(), static_cast<unsigned long long>(seed), rounds,
              combopt::csv_double(trace.final_loss).c_str(),
              combopt::csv_double(trace.final_regret).c_str(), path.c_str());
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out_override) {
  combopt::SweepConfig config = combopt::parse_sweep_config_file(config_path);
  if (!out_override.empty()) config.out_dir = out_override;
  const auto results = combopt::run_sweep(config);
  for (const auto& cell : results) {
    std::printf("%s: mean=%s stderr=%s", cell.cell_id.c_str(),
                combopt::csv_double(cell.report.mean).c_str(),
                combopt::csv_double(cell.report.std_error).c_str());
    if (cell.report.bound) {
      std::printf(" bound=%s satisfied=%s",
                  combopt::csv_double(*cell.report.bound).c_str(),
                  cell.report.bound_satisfied ? "true" : "false");
    }
    std::printf("\n");
  }
  return 0;
}

int cmd_bound(const std::string& legendre, int m, int d, long n,
              bool reference) {
  const combopt::LegendreFunction F = combopt::LegendreFunction::parse(
      legendre, std::max(d, 1));
  const double eta = combopt::tuned_eta(F, m, d, n);
  const double bound = combopt::regret_bound(F, m, d, n);
  std::printf("legendre=%s m=%d d=%d n=%ld eta=%s bound=%s\n",
              F.describe().c_str(), m, d, n, combopt::csv_double(eta).c_str(),
              combopt::csv_double(bound).c_str());
  if (reference) {
    std::printf("minimax_reference=%s\n",
                combopt::csv_double(combopt::minimax_lower_reference(m, d, n))
                    .c_str());
  }
  return 0;
}

int cmd_verify(const std::string& out_path) {
  const auto results = combopt::run_verification_suite();
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path, std::ios::binary);
    if (!file) {
      std::fprintf(stderr, "cannot write %s\n", out_path.c_str());
      return 2;
    }
    out = &file;
  }
  (*out) << "check,passed,detail\n";
  bool all = true;
  for (const auto& r : results) {
    (*out) << r.name << ',' << (r.passed ? "true" : "false") << ','
           << combopt::sanitize_id(r.detail) << '\n';
    all = all && r.passed;
  }
  if (!out_path.empty()) {
    std::printf("%zu checks, %s\n", results.size(), all ? "all passed" : "FAILURES");
  }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"online combinatorial optimization testbed"};
  app.require_subcommand(1);

  // run
  std::string set_desc = "mset:d=4,m=2";
  combopt::PlayerSpec spec;
  std::string adversary = "iid";
  long rounds = 100;
  std::uint64_t seed = 1;
  std::string out_dir;
  auto* run = app.add_subcommand("run", "play one seeded game, write its trace");
  run->add_option("--set", set_desc, "action set descriptor");
  run->add_option("--player", spec.kind, "osmd | exp2");
  run->add_option("--legendre", spec.legendre, "negentropy | inf:q=2 (osmd)");
  run->add_option("--eta", spec.eta, "auto | positive value");
  run->add_option("--gamma", spec.gamma, "exp2 bandit exploration mix");
  run->add_option("--feedback", spec.feedback, "full | semi | bandit");
  run->add_option("--adversary", adversary, "adversary descriptor");
  run->add_option("--rounds", rounds, "number of rounds");
  run->add_option("--seed", seed, "master seed");
  run->add_option("--out", out_dir, "output directory");

  // sweep
  std::string config_path;
  std::string sweep_out;
  auto* sweep = app.add_subcommand("sweep", "run a config-driven grid of games");
  sweep->add_option("--config", config_path, "JSON config")->required();
  sweep->add_option("--out", sweep_out, "output directory override");

  // bound
  std::string bound_legendre = "negentropy";
  int bm = 1, bd = 2;
  long bn = 100;
  bool reference = false;
  auto* bound = app.add_subcommand("bound", "print tuned eta and regret bound");
  bound->add_option("--legendre", bound_legendre, "negentropy | inf:q=2");
  bound->add_option("--m", bm, "action weight")->required();
  bound->add_option("--d", bd, "dimension")->required();
  bound->add_option("--n", bn, "rounds")->required();
  bound->add_flag("--reference", reference, "also print 0.02 m sqrt(dn)");

  // verify
  std::string verify_out;
  auto* verify = app.add_subcommand("verify", "run the oracle check suite");
  verify->add_option("--out", verify_out, "write the pass/fail CSV here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      return cmd_run(set_desc, spec, adversary, rounds, seed, out_dir);
    }
    if (sweep->parsed()) return cmd_sweep(config_path, sweep_out);
    if (bound->parsed()) return cmd_bound(bound_legendre, bm, bd, bn, reference);
    if (verify->parsed()) return cmd_verify(verify_out);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
