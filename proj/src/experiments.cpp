#include "elolab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "elolab/rng.hpp"

namespace elolab {

namespace {

// Keeps per-row permutation-seed indices disjoint across rows.
constexpr std::uint64_t kRowSeedStride = 1ull << 20;

std::string format_p_label(double p) {
  std::ostringstream out;
  out << "p=" << std::fixed << std::setprecision(4) << p;
  return out.str();
}

std::size_t index_of(const std::vector<std::string>& ids,
                     const std::string& id) {
  auto it = std::find(ids.begin(), ids.end(), id);
  if (it == ids.end()) {
    throw std::invalid_argument("model id not present in summary: " + id);
  }
  return static_cast<std::size_t>(it - ids.begin());
}

// Fills diffs for one row: the outcome sequence is fixed, and cells at equal
// n_perms share their permutation seed so only K varies between them.
std::vector<std::vector<double>> sweep_row(
    std::span<const MatchRecord> sequence, const std::string& model_a,
    const std::string& model_b, const SweepAxes& axes,
    std::uint64_t master_seed, std::size_t row,
    const RatingConfig& base_config) {
  std::vector<std::vector<double>> row_diffs(
      axes.k_values.size(),
      std::vector<double>(axes.n_perms_values.size(), 0.0));
  RunOptions options;
  options.track_per_match = false;
  for (std::size_t np = 0; np < axes.n_perms_values.size(); ++np) {
    std::uint64_t perm_seed =
        derive_seed(master_seed, "sweep-perms", row * kRowSeedStride + np);
    for (std::size_t ki = 0; ki < axes.k_values.size(); ++ki) {
      RatingConfig config = base_config;
      config.k_factor = axes.k_values[ki];
      PermutationSummary summary = run_permutations(
          sequence, axes.n_perms_values[np], perm_seed, config, options);
      std::vector<double> mean = summary.mean_final();
      row_diffs[ki][np] = mean[index_of(summary.model_ids, model_a)] -
                          mean[index_of(summary.model_ids, model_b)];
    }
  }
  return row_diffs;
}

}  // namespace

void SweepAxes::validate_and_normalize() {
  std::sort(k_values.begin(), k_values.end());
  k_values.erase(std::unique(k_values.begin(), k_values.end()),
                 k_values.end());
  std::sort(n_perms_values.begin(), n_perms_values.end());
  n_perms_values.erase(
      std::unique(n_perms_values.begin(), n_perms_values.end()),
      n_perms_values.end());
  if (k_values.empty() || n_perms_values.empty()) {
    throw std::invalid_argument("SweepAxes: axes must be non-empty");
  }
  for (double k : k_values) {
    if (!(k > 0.0) || !std::isfinite(k)) {
      throw std::invalid_argument("SweepAxes: k values must be positive");
    }
  }
  if (n_perms_values.front() < 1) {
    throw std::invalid_argument("SweepAxes: n_perms values must be >= 1");
  }
}

SweepGrid k_sweep(const std::vector<PairSpec>& sources, SweepAxes axes,
                  std::uint64_t master_seed, const RatingConfig& base_config) {
  axes.validate_and_normalize();
  base_config.validate();
  if (sources.empty()) {
    throw std::invalid_argument("k_sweep: no source pairs");
  }
  for (const PairSpec& source : sources) {
    source.validate();
    if (source.model_a != sources.front().model_a ||
        source.model_b != sources.front().model_b) {
      throw std::invalid_argument(
          "k_sweep: all source pairs must name the same two models");
    }
  }

  SweepGrid grid;
  grid.model_a = sources.front().model_a;
  grid.model_b = sources.front().model_b;
  grid.k_values = axes.k_values;
  grid.n_perms_values = axes.n_perms_values;
  grid.master_seed = master_seed;
  for (std::size_t row = 0; row < sources.size(); ++row) {
    grid.p_values.push_back(sources[row].p_a_wins);
    grid.row_labels.push_back(format_p_label(sources[row].p_a_wins));
    std::vector<MatchRecord> sequence = multinomial_outcomes(
        sources[row], derive_seed(master_seed, "sweep-outcomes", row));
    grid.diffs.push_back(sweep_row(sequence, grid.model_a, grid.model_b, axes,
                                   master_seed, row, base_config));
  }
  return grid;
}

SweepGrid k_sweep(std::span<const MatchRecord> sequence,
                  const std::string& source_label, SweepAxes axes,
                  std::uint64_t master_seed, const RatingConfig& base_config) {
  axes.validate_and_normalize();
  base_config.validate();
  if (sequence.empty()) {
    throw std::invalid_argument("k_sweep: sequence is empty");
  }
  SweepGrid grid;
  grid.model_a = sequence.front().model_a;
  grid.model_b = sequence.front().model_b;
  for (const MatchRecord& record : sequence) {
    bool same = record.model_a == grid.model_a && record.model_b == grid.model_b;
    bool swapped =
        record.model_a == grid.model_b && record.model_b == grid.model_a;
    if (!same && !swapped) {
      throw std::invalid_argument(
          "k_sweep: ingested sequence must cover exactly one matchup");
    }
  }
  grid.k_values = axes.k_values;
  grid.n_perms_values = axes.n_perms_values;
  grid.master_seed = master_seed;
  grid.row_labels.push_back(source_label);
  grid.diffs.push_back(sweep_row(sequence, grid.model_a, grid.model_b, axes,
                                 master_seed, 0, base_config));
  return grid;
}

TransitivityReport transitivity_experiment(
    const ScenarioSpec& scenario,
    const std::vector<TransitivityConfig>& configs, std::uint64_t master_seed,
    const RatingConfig& base_config) {
  scenario.validate();
  base_config.validate();
  if (configs.empty()) {
    throw std::invalid_argument("transitivity_experiment: no configurations");
  }

  std::vector<MatchRecord> sequence = build_scenario_sequence(
      scenario, derive_seed(master_seed, "scenario-outcomes", 0));

  TransitivityReport report;
  report.scenario = scenario_name(scenario.name);
  report.expected_ranking = scenario.chain_models();
  report.master_seed = master_seed;

  RunOptions options;
  options.track_per_match = false;
  // Every configuration replays the same baseline under orderings drawn from
  // the same seed, so configurations sharing n_perms see identical orderings
  // and differ only in K; a configuration's result is independent of which
  // other configurations run alongside it.
  std::uint64_t perm_seed = derive_seed(master_seed, "scenario-perms", 0);
  for (std::size_t i = 0; i < configs.size(); ++i) {
    RatingConfig config = base_config;
    config.k_factor = configs[i].k_factor;
    PermutationSummary summary = run_permutations(
        sequence, configs[i].n_perms, perm_seed, config, options);
    TransitivityConfigResult result;
    result.config = configs[i];
    result.model_ids = summary.model_ids;
    result.mean_final = summary.mean_final();
    result.sem_final = summary.sem_final();
    std::map<std::string, double> by_model;
    for (std::size_t m = 0; m < result.model_ids.size(); ++m) {
      by_model[result.model_ids[m]] = result.mean_final[m];
    }
    result.implied_ranking = ranking_from_ratings(by_model);
    result.violation = result.implied_ranking != report.expected_ranking;
    report.results.push_back(std::move(result));
  }
  return report;
}

std::vector<std::string> ranking_from_ratings(
    const std::map<std::string, double>& ratings) {
  if (ratings.empty()) {
    throw std::invalid_argument("ranking_from_ratings: empty rating map");
  }
  std::vector<std::pair<std::string, double>> entries(ratings.begin(),
                                                      ratings.end());
  for (const auto& [id, value] : entries) {
    if (!std::isfinite(value)) {
      throw std::invalid_argument("ranking_from_ratings: non-finite rating for " +
                                  id);
    }
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const auto& lhs, const auto& rhs) {
                     if (lhs.second != rhs.second) return lhs.second > rhs.second;
                     return lhs.first < rhs.first;
                   });
  std::vector<std::string> ranking;
  ranking.reserve(entries.size());
  for (const auto& [id, value] : entries) ranking.push_back(id);
  return ranking;
}

std::vector<TransitivityViolation> check_transitivity(
    const TransitivityReport& report,
    const std::vector<std::string>& expected) {
  std::vector<TransitivityViolation> violations;
  for (std::size_t c = 0; c < report.results.size(); ++c) {
    const TransitivityConfigResult& result = report.results[c];
    std::vector<std::string> sorted_expected = expected;
    std::sort(sorted_expected.begin(), sorted_expected.end());
    if (sorted_expected != result.model_ids) {
      throw std::invalid_argument(
          "check_transitivity: expected ranking does not cover the report's "
          "models");
    }
    std::map<std::string, std::size_t> position;
    for (std::size_t i = 0; i < result.implied_ranking.size(); ++i) {
      position[result.implied_ranking[i]] = i;
    }
    for (std::size_t i = 0; i < expected.size(); ++i) {
      for (std::size_t j = i + 1; j < expected.size(); ++j) {
        if (position.at(expected[i]) > position.at(expected[j])) {
          violations.push_back(TransitivityViolation{
              c, result.config, expected[i], expected[j]});
        }
      }
    }
  }
  return violations;
}

SettingsRecommendation recommend_settings(double estimated_win_rate) {
  if (!(estimated_win_rate > 0.0) || !(estimated_win_rate < 1.0)) {
    throw std::invalid_argument(
        "recommend_settings: win rate must lie strictly between 0 and 1");
  }
  double deviation = std::abs(estimated_win_rate - 0.5);
  SettingsRecommendation rec;
  rec.n_perms = 100;
  if (deviation < 0.05) {
    rec.k_factor = 8;
    rec.rationale =
        "win rates are closely matched; a small K-factor limits rating swings "
        "driven by streaks, and averaging over at least 100 reshuffled "
        "orderings removes the ordering effect";
  } else if (deviation >= 0.1) {
    rec.k_factor = 32;
    rec.rationale =
        "one model clearly outperforms the other; a larger K-factor reaches "
        "the equilibrium rating gap in fewer matches, with at least 100 "
        "permutations to keep the estimate stable";
  } else {
    rec.k_factor = 16;
    rec.rationale =
        "moderate separation between models; the conventional K = 16 trades "
        "off convergence speed against volatility, with at least 100 "
        "permutations";
  }
  return rec;
}

}  // namespace elolab
