#ifndef ELOLAB_EXPERIMENTS_HPP
#define ELOLAB_EXPERIMENTS_HPP

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "elolab/feedback.hpp"
#include "elolab/permutation.hpp"
#include "elolab/rating.hpp"

namespace elolab {

// Grid axes for the K-factor sweep. Values are sorted and deduplicated on
// validation; every (row, k, n_perms) combination yields one cell.
struct SweepAxes {
  std::vector<double> k_values = {1, 8, 16, 32, 64};
  std::vector<std::int64_t> n_perms_values = {1, 100};

  void validate_and_normalize();
};

// Final mean rating differences (first model minus second) per grid cell.
// Rows are win probabilities for synthetic sweeps, or a single labelled row
// for an ingested sequence. Cells sharing a row share one outcome sequence;
// cells at the same (row, n_perms) replay identical orderings, so only the
// K-factor varies between them.
struct SweepGrid {
  std::string model_a;
  std::string model_b;
  std::vector<double> k_values;
  std::vector<std::int64_t> n_perms_values;
  std::vector<std::string> row_labels;  // "p=0.5100" or a source label
  std::vector<double> p_values;         // empty for ingested sequences
  std::uint64_t master_seed = 0;
  // diffs[row][k_index][n_perms_index]
  std::vector<std::vector<std::vector<double>>> diffs;
};

struct TransitivityConfig {
  std::int64_t n_perms = 100;
  double k_factor = 16.0;
};

// One (n_perms, K) configuration's outcome: mean final rating and SEM per
// model, the implied ranking, and whether it contradicts the expectation.
struct TransitivityConfigResult {
  TransitivityConfig config;
  std::vector<std::string> model_ids;  // sorted, aligned with means/sems
  std::vector<double> mean_final;
  std::vector<double> sem_final;
  std::vector<std::string> implied_ranking;
  bool violation = false;
};

struct TransitivityReport {
  std::string scenario;
  std::vector<std::string> expected_ranking;
  std::uint64_t master_seed = 0;
  std::vector<TransitivityConfigResult> results;
};

// An expected-before pair whose ratings came out in the opposite order.
struct TransitivityViolation {
  std::size_t config_index;
  TransitivityConfig config;
  std::string expected_upper;
  std::string expected_lower;
};

// Synthetic sweep: one outcome sequence per source pair (its p_a_wins is the
// row), reused across every (k, n_perms) cell of that row.
SweepGrid k_sweep(const std::vector<PairSpec>& sources, SweepAxes axes,
                  std::uint64_t master_seed, const RatingConfig& base_config);

// Ingested sweep over a fixed two-model sequence.
SweepGrid k_sweep(std::span<const MatchRecord> sequence,
                  const std::string& source_label, SweepAxes axes,
                  std::uint64_t master_seed, const RatingConfig& base_config);

// Runs the scenario's interleaved baseline under each (n_perms, K)
// configuration and reports mean +- SEM, ranking, and violations against the
// scenario's expected hierarchy.
TransitivityReport transitivity_experiment(
    const ScenarioSpec& scenario,
    const std::vector<TransitivityConfig>& configs, std::uint64_t master_seed,
    const RatingConfig& base_config);

// Model ids in descending rating order; exact ties break lexicographically.
std::vector<std::string> ranking_from_ratings(
    const std::map<std::string, double>& ratings);

// Every expected-order pair that a configuration's ratings contradict.
// Empty exactly when each configuration's implied ranking matches expected.
std::vector<TransitivityViolation> check_transitivity(
    const TransitivityReport& report,
    const std::vector<std::string>& expected);

struct SettingsRecommendation {
  double k_factor = 16.0;
  std::int64_t n_perms = 100;
  std::string rationale;
};

// Hyperparameter guidance from the estimated win rate: always average over
// at least 100 permutations; shrink K when the matchup is nearly even,
// raise it when one model clearly dominates.
SettingsRecommendation recommend_settings(double estimated_win_rate);

}  // namespace elolab

#endif  // ELOLAB_EXPERIMENTS_HPP
