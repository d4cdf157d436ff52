// elolab command-line surface: synthetic feedback generation, permutation
// replays, K-factor sweeps, transitivity scenarios, feedback ingestion, and
// hyperparameter guidance. Every command is deterministic for fixed flags.

#include <cstdint>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "elolab/experiments.hpp"
#include "elolab/feedback.hpp"
#include "elolab/io.hpp"
#include "elolab/permutation.hpp"
#include "elolab/rating.hpp"
#include "elolab/rng.hpp"

namespace {

std::string fmt4(double value) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(4) << value;
  return out.str();
}

elolab::TiePolicy tie_policy_from_name(const std::string& name) {
  if (name == "exclude") return elolab::TiePolicy::exclude;
  if (name == "half") return elolab::TiePolicy::half_score;
  throw std::invalid_argument("unknown tie policy: " + name);
}

// Rating hyperparameters shared by every replaying subcommand.
struct RatingFlags {
  double k_factor = 16.0;
  double initial_rating = 1400.0;
  double scale_divisor = 400.0;
  double odds_base = 10.0;
  std::string tie_policy = "exclude";

  elolab::RatingConfig to_config() const {
    elolab::RatingConfig config;
    config.k_factor = k_factor;
    config.initial_rating = initial_rating;
    config.scale_divisor = scale_divisor;
    config.odds_base = odds_base;
    config.tie_policy = tie_policy_from_name(tie_policy);
    config.validate();
    return config;
  }
};

void add_rating_flags(CLI::App* cmd, RatingFlags& flags, bool with_k) {
  if (with_k) {
    cmd->add_option("--k", flags.k_factor, "K-factor (update step size)")
        ->capture_default_str();
  }
  cmd->add_option("--initial-rating", flags.initial_rating,
                  "Rating every model starts from")
      ->capture_default_str();
  cmd->add_option("--scale-divisor", flags.scale_divisor,
                  "Rating-gap divisor in the expected score")
      ->capture_default_str();
  cmd->add_option("--odds-base", flags.odds_base,
                  "Odds base in the expected score")
      ->capture_default_str();
  cmd->add_option("--tie-policy", flags.tie_policy,
                  "Tie handling: exclude or half")
      ->check(CLI::IsMember({"exclude", "half"}))
      ->capture_default_str();
}

// Synthetic two-model matchup shared by simulate/permute/sweep.
struct PairFlags {
  std::string model_a = "alpha";
  std::string model_b = "beta";
  double p_tie = 0.0;
  std::int64_t n_games = 1000;
};

void add_pair_flags(CLI::App* cmd, PairFlags& flags) {
  cmd->add_option("--model-a", flags.model_a, "First model's identifier")
      ->capture_default_str();
  cmd->add_option("--model-b", flags.model_b, "Second model's identifier")
      ->capture_default_str();
  cmd->add_option("--p-tie", flags.p_tie, "Per-game tie probability")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_option("--n-games", flags.n_games, "Games in the sequence")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

elolab::TransitivityConfig parse_config(const std::string& text) {
  std::size_t colon = text.find(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 >= text.size()) {
    throw std::invalid_argument("config '" + text +
                                "' is not of the form N_PERMS:K");
  }
  elolab::TransitivityConfig config;
  std::size_t used = 0;
  config.n_perms = std::stoll(text.substr(0, colon), &used);
  if (used != colon) {
    throw std::invalid_argument("bad permutation count in config: " + text);
  }
  std::string k_text = text.substr(colon + 1);
  config.k_factor = std::stod(k_text, &used);
  if (used != k_text.size()) {
    throw std::invalid_argument("bad K-factor in config: " + text);
  }
  if (config.n_perms < 1 || config.k_factor <= 0) {
    throw std::invalid_argument("config values must be positive: " + text);
  }
  return config;
}

void print_load_notes(const elolab::LoadResult& loaded) {
  for (const std::string& warning : loaded.warnings) {
    std::cout << "warning: " << warning << "\n";
  }
  if (loaded.ties_skipped > 0) {
    std::cout << "ties skipped: " << loaded.ties_skipped << "\n";
  }
}

int run_simulate(const PairFlags& pair_flags, const RatingFlags& rating_flags,
                 double p_win, std::uint64_t seed, const std::string& out) {
  elolab::RatingConfig config = rating_flags.to_config();
  elolab::PairSpec pair;
  pair.model_a = pair_flags.model_a;
  pair.model_b = pair_flags.model_b;
  pair.p_a_wins = p_win;
  pair.p_tie = pair_flags.p_tie;
  pair.n_games = pair_flags.n_games;

  std::vector<elolab::MatchRecord> sequence = elolab::multinomial_outcomes(
      pair, elolab::derive_seed(seed, "outcomes", 0));
  std::int64_t a_wins = 0;
  std::int64_t b_wins = 0;
  std::int64_t ties = 0;
  for (const elolab::MatchRecord& record : sequence) {
    switch (record.outcome) {
      case elolab::Outcome::a_wins: ++a_wins; break;
      case elolab::Outcome::b_wins: ++b_wins; break;
      case elolab::Outcome::tie: ++ties; break;
    }
  }
  elolab::write_feedback(out, elolab::to_feedback(sequence));
  std::cout << "wrote " << sequence.size() << " records to " << out << "\n";
  std::cout << pair.model_a << " wins: " << a_wins << "\n";
  std::cout << pair.model_b << " wins: " << b_wins << "\n";
  std::cout << "ties: " << ties << "\n";

  elolab::Trajectory trajectory = elolab::replay(sequence, config);
  std::vector<double> finals = trajectory.final_ratings();
  std::cout << "final ratings (input order):";
  for (std::size_t m = 0; m < trajectory.model_ids.size(); ++m) {
    std::cout << (m == 0 ? " " : ", ") << trajectory.model_ids[m] << " "
              << fmt4(finals[m]);
  }
  std::cout << "\n";
  return 0;
}

int run_permute(const PairFlags& pair_flags, const RatingFlags& rating_flags,
                const std::string& input, double p_win, std::int64_t n_perms,
                std::uint64_t seed, int threads, const std::string& out) {
  elolab::RatingConfig config = rating_flags.to_config();
  std::vector<elolab::MatchRecord> sequence;
  if (!input.empty()) {
    elolab::LoadResult loaded =
        elolab::load_feedback(input, config.tie_policy);
    print_load_notes(loaded);
    sequence = std::move(loaded.records);
  } else {
    elolab::PairSpec pair;
    pair.model_a = pair_flags.model_a;
    pair.model_b = pair_flags.model_b;
    pair.p_a_wins = p_win;
    pair.p_tie = pair_flags.p_tie;
    pair.n_games = pair_flags.n_games;
    sequence = elolab::multinomial_outcomes(
        pair, elolab::derive_seed(seed, "outcomes", 0));
  }

  elolab::RunOptions options;
  options.n_threads = threads;
  elolab::PermutationSummary summary =
      elolab::run_permutations(sequence, n_perms, seed, config, options);
  std::cout << "matches: " << summary.mean_ratings.size()
            << ", n_perms: " << summary.n_perms << "\n";
  std::vector<double> means = summary.mean_final();
  std::vector<double> sems = summary.sem_final();
  for (std::size_t m = 0; m < summary.model_ids.size(); ++m) {
    std::cout << summary.model_ids[m] << ": mean " << fmt4(means[m])
              << ", sem " << fmt4(sems[m]) << "\n";
  }
  if (!out.empty()) {
    elolab::emit_summary(summary, out);
    std::cout << "wrote " << out << "\n";
  }
  return 0;
}

int run_sweep(const PairFlags& pair_flags, const RatingFlags& rating_flags,
              const std::string& input, std::vector<double> p_values,
              std::vector<double> k_values,
              std::vector<std::int64_t> n_perms_values, std::uint64_t seed,
              const std::string& out) {
  elolab::RatingConfig config = rating_flags.to_config();
  elolab::SweepAxes axes;
  if (!k_values.empty()) axes.k_values = std::move(k_values);
  if (!n_perms_values.empty()) axes.n_perms_values = std::move(n_perms_values);

  elolab::SweepGrid grid;
  if (!input.empty()) {
    elolab::LoadResult loaded =
        elolab::load_feedback(input, config.tie_policy);
    print_load_notes(loaded);
    grid = elolab::k_sweep(loaded.records,
                           std::filesystem::path(input).filename().string(),
                           axes, seed, config);
  } else {
    if (p_values.empty()) p_values = {0.51};
    std::vector<elolab::PairSpec> sources;
    for (double p : p_values) {
      elolab::PairSpec pair;
      pair.model_a = pair_flags.model_a;
      pair.model_b = pair_flags.model_b;
      pair.p_a_wins = p;
      pair.p_tie = pair_flags.p_tie;
      pair.n_games = pair_flags.n_games;
      sources.push_back(std::move(pair));
    }
    grid = elolab::k_sweep(sources, axes, seed, config);
  }

  for (std::size_t row = 0; row < grid.row_labels.size(); ++row) {
    for (std::size_t ki = 0; ki < grid.k_values.size(); ++ki) {
      for (std::size_t np = 0; np < grid.n_perms_values.size(); ++np) {
        std::cout << grid.row_labels[row] << " k=" << fmt4(grid.k_values[ki])
                  << " n_perms=" << grid.n_perms_values[np]
                  << " diff=" << fmt4(grid.diffs[row][ki][np]) << "\n";
      }
    }
  }
  elolab::emit_grid(grid, out);
  std::cout << "wrote " << out << "\n";
  return 0;
}

int run_transitivity(const RatingFlags& rating_flags,
                     const std::string& scenario_name,
                     const std::vector<std::string>& config_texts,
                     std::int64_t n_games, std::uint64_t seed,
                     const std::string& out, const std::string& format) {
  elolab::RatingConfig base = rating_flags.to_config();
  std::vector<elolab::TransitivityConfig> configs;
  if (config_texts.empty()) {
    configs = {{1, 1.0}, {1, 16.0}, {100, 1.0}, {100, 16.0}};
  } else {
    for (const std::string& text : config_texts) {
      configs.push_back(parse_config(text));
    }
  }
  elolab::ScenarioSpec spec = elolab::make_scenario(
      elolab::scenario_from_name(scenario_name), n_games, seed);
  elolab::TransitivityReport report =
      elolab::transitivity_experiment(spec, configs, seed, base);

  std::cout << "scenario " << report.scenario << ", expected";
  for (const std::string& id : report.expected_ranking) {
    std::cout << " " << id;
  }
  std::cout << "\n";
  for (const elolab::TransitivityConfigResult& result : report.results) {
    std::cout << "n_perms=" << result.config.n_perms
              << " k=" << fmt4(result.config.k_factor) << ":";
    for (std::size_t m = 0; m < result.model_ids.size(); ++m) {
      std::cout << (m == 0 ? " " : ", ") << result.model_ids[m] << " "
                << fmt4(result.mean_final[m]) << "+-"
                << fmt4(result.sem_final[m]);
    }
    std::cout << " -> ranking";
    for (const std::string& id : result.implied_ranking) {
      std::cout << " " << id;
    }
    std::cout << (result.violation ? " (violation)" : " (consistent)")
              << "\n";
  }
  if (!out.empty()) {
    elolab::emit_report(report, out, elolab::format_from_name(format));
    std::cout << "wrote " << out << "\n";
  }
  return 0;
}

int run_ingest(const std::string& input, const std::string& out,
               const std::string& format) {
  // Keep tie rows: the table tallies them separately and win_rate already
  // counts decided games only.
  elolab::LoadResult loaded =
      elolab::load_feedback(input, elolab::TiePolicy::half_score);
  for (const std::string& warning : loaded.warnings) {
    std::cout << "warning: " << warning << "\n";
  }
  elolab::WinRateTable table = elolab::win_rates(loaded.records);
  for (const elolab::MatchupRates& row : table.rows) {
    std::cout << row.model << " vs " << row.opponent << ": " << row.wins
              << "W/" << row.losses << "L/" << row.ties << "T, win rate "
              << (row.win_rate ? fmt4(*row.win_rate) : std::string("n/a"))
              << "\n";
  }
  if (!out.empty()) {
    elolab::emit_win_rates(table, out, elolab::format_from_name(format));
    std::cout << "wrote " << out << "\n";
  }
  return 0;
}

int run_recommend(double win_rate) {
  elolab::SettingsRecommendation rec = elolab::recommend_settings(win_rate);
  std::cout << "k_factor: " << fmt4(rec.k_factor) << "\n";
  std::cout << "n_perms: " << rec.n_perms << "\n";
  std::cout << "rationale: " << rec.rationale << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "elolab: ordering- and K-factor-sensitivity analysis of Elo ratings "
      "built from pairwise model comparisons"};
  app.require_subcommand(1);

  // simulate
  auto* simulate = app.add_subcommand(
      "simulate", "Generate a synthetic two-model feedback file");
  PairFlags sim_pair;
  RatingFlags sim_rating;
  double sim_p_win = 0.6;
  std::uint64_t sim_seed = 0;
  std::string sim_out;
  simulate->add_option("--p-win", sim_p_win,
                       "Probability that the first model wins a game")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  add_pair_flags(simulate, sim_pair);
  simulate->add_option("--seed", sim_seed, "Master seed")
      ->capture_default_str();
  simulate->add_option("--out", sim_out, "Feedback CSV to write")->required();
  add_rating_flags(simulate, sim_rating, /*with_k=*/true);

  // permute
  auto* permute = app.add_subcommand(
      "permute", "Replay one outcome sequence under many orderings");
  PairFlags perm_pair;
  RatingFlags perm_rating;
  std::string perm_input;
  double perm_p_win = 0.6;
  std::int64_t perm_n_perms = 100;
  std::uint64_t perm_seed = 0;
  int perm_threads = 1;
  std::string perm_out;
  auto* perm_input_opt =
      permute->add_option("--input", perm_input, "Feedback CSV to replay")
          ->check(CLI::ExistingFile);
  permute
      ->add_option("--p-win", perm_p_win,
                   "Synthetic win probability for the first model")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str()
      ->excludes(perm_input_opt);
  add_pair_flags(permute, perm_pair);
  permute->add_option("--n-perms", perm_n_perms, "Orderings to replay")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  permute->add_option("--seed", perm_seed, "Master seed")
      ->capture_default_str();
  permute->add_option("--threads", perm_threads, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  permute->add_option("--out", perm_out, "Trajectory summary CSV to write");
  add_rating_flags(permute, perm_rating, /*with_k=*/true);

  // sweep
  auto* sweep = app.add_subcommand(
      "sweep", "Final-gap grid across K-factors and permutation counts");
  PairFlags sweep_pair;
  RatingFlags sweep_rating;
  std::string sweep_input;
  std::vector<double> sweep_p_values;
  std::vector<double> sweep_k_values;
  std::vector<std::int64_t> sweep_n_perms;
  std::uint64_t sweep_seed = 0;
  std::string sweep_out;
  auto* sweep_input_opt =
      sweep->add_option("--input", sweep_input, "Feedback CSV to sweep")
          ->check(CLI::ExistingFile);
  sweep
      ->add_option("--p-win", sweep_p_values,
                   "Win probability per grid row (repeatable; default 0.51)")
      ->check(CLI::Range(0.0, 1.0))
      ->excludes(sweep_input_opt);
  add_pair_flags(sweep, sweep_pair);
  sweep->add_option("--k", sweep_k_values,
                    "K-factor axis (repeatable; default 1 8 16 32 64)");
  sweep->add_option("--n-perms", sweep_n_perms,
                    "Permutation-count axis (repeatable; default 1 100)");
  sweep->add_option("--seed", sweep_seed, "Master seed")
      ->capture_default_str();
  sweep->add_option("--out", sweep_out, "Grid CSV to write")->required();
  add_rating_flags(sweep, sweep_rating, /*with_k=*/false);

  // transitivity
  auto* transitivity = app.add_subcommand(
      "transitivity", "Three-model chain scenarios under (n_perms, K)");
  RatingFlags trans_rating;
  std::string trans_scenario = "king";
  std::vector<std::string> trans_configs;
  std::int64_t trans_n_games = 1000;
  std::uint64_t trans_seed = 0;
  std::string trans_out;
  std::string trans_format = "jsonl";
  transitivity
      ->add_option("--scenario", trans_scenario,
                   "king, rook, bishop, or knight")
      ->check(CLI::IsMember({"king", "rook", "bishop", "knight"}))
      ->capture_default_str();
  transitivity->add_option(
      "--config", trans_configs,
      "N_PERMS:K pair (repeatable; default 1:1 1:16 100:1 100:16)");
  transitivity
      ->add_option("--n-games", trans_n_games, "Games per model pairing")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  transitivity->add_option("--seed", trans_seed, "Master seed")
      ->capture_default_str();
  transitivity->add_option("--out", trans_out, "Report file to write");
  transitivity->add_option("--format", trans_format, "jsonl or csv")
      ->check(CLI::IsMember({"jsonl", "csv"}))
      ->capture_default_str();
  add_rating_flags(transitivity, trans_rating, /*with_k=*/false);

  // ingest
  auto* ingest =
      app.add_subcommand("ingest", "Win-rate table from a feedback file");
  std::string ingest_input;
  std::string ingest_out;
  std::string ingest_format = "csv";
  ingest->add_option("--input", ingest_input, "Feedback CSV to read")
      ->required()
      ->check(CLI::ExistingFile);
  ingest->add_option("--out", ingest_out, "Win-rate table to write");
  ingest->add_option("--format", ingest_format, "csv or jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}))
      ->capture_default_str();

  // recommend
  auto* recommend = app.add_subcommand(
      "recommend", "Suggested K and n_perms for an estimated win rate");
  double rec_win_rate = 0.5;
  recommend
      ->add_option("--win-rate", rec_win_rate,
                   "Estimated win rate of the stronger model")
      ->required()
      ->check(CLI::Range(0.0, 1.0));

  try {
    app.parse(argc, argv);
    if (simulate->parsed()) {
      return run_simulate(sim_pair, sim_rating, sim_p_win, sim_seed, sim_out);
    }
    if (permute->parsed()) {
      return run_permute(perm_pair, perm_rating, perm_input, perm_p_win,
                         perm_n_perms, perm_seed, perm_threads, perm_out);
    }
    if (sweep->parsed()) {
      return run_sweep(sweep_pair, sweep_rating, sweep_input, sweep_p_values,
                       sweep_k_values, sweep_n_perms, sweep_seed, sweep_out);
    }
    if (transitivity->parsed()) {
      return run_transitivity(trans_rating, trans_scenario, trans_configs,
                              trans_n_games, trans_seed, trans_out,
                              trans_format);
    }
    if (ingest->parsed()) {
      return run_ingest(ingest_input, ingest_out, ingest_format);
    }
    if (recommend->parsed()) {
      return run_recommend(rec_win_rate);
    }
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << "\n";
    return e.get_exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
