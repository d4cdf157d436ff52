#ifndef ELOLAB_PERMUTATION_HPP
#define ELOLAB_PERMUTATION_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "elolab/feedback.hpp"
#include "elolab/rating.hpp"

namespace elolab {

// Per-match rating history of one replay. Row i holds every tracked model's
// rating after the i-th processed match; models not in that match carry
// forward unchanged. Under the exclude tie policy, tied matches produce no
// row and are tallied in skipped_ties.
struct Trajectory {
  std::vector<std::string> model_ids;          // sorted
  std::vector<std::vector<double>> ratings;    // [match_index][model]
  std::int64_t skipped_ties = 0;

  std::vector<double> final_ratings() const;
};

// Cross-permutation statistics of one outcome multiset replayed under many
// orderings. mean/sem are aligned on match index; permutation 0 is always
// the unshuffled input ordering.
struct PermutationSummary {
  std::vector<std::string> model_ids;                     // sorted
  std::vector<std::vector<double>> mean_ratings;          // [match_index][model]
  std::vector<std::vector<double>> sem_ratings;           // [match_index][model]
  std::vector<std::vector<double>> final_ratings_per_perm;  // [perm][model]
  std::int64_t n_perms = 0;
  std::int64_t skipped_ties = 0;
  std::vector<Trajectory> trajectories;  // populated only on request

  std::vector<double> mean_final() const;
  std::vector<double> sem_final() const;
};

struct RunOptions {
  // Worker threads. Aggregation runs over fixed permutation blocks merged in
  // block order, so results are bit-identical for any thread count.
  int n_threads = 1;
  // Retain every full trajectory (memory scales with n_perms).
  bool keep_trajectories = false;
  // Accumulate per-match mean/sem matrices; sweeps that only need final
  // ratings switch this off.
  bool track_per_match = true;
};

// Replays the sequence in the given order, all models starting from
// config.initial_rating. Tie records are skipped (exclude), scored 0.5
// (half_score), or rejected when strict_ties is set.
Trajectory replay(std::span<const MatchRecord> sequence,
                  const RatingConfig& config, bool strict_ties = false);

// Replays n_perms orderings of the fixed outcome multiset: permutation 0 is
// the input order, the rest are uniform reshuffles from seeds derived off
// master_seed. Under the exclude policy, ties are removed up front so every
// permutation has the same length. Ratings reset before each replay.
PermutationSummary run_permutations(std::span<const MatchRecord> sequence,
                                    std::int64_t n_perms,
                                    std::uint64_t master_seed,
                                    const RatingConfig& config,
                                    const RunOptions& options = {});

// Standard error of the mean: sample standard deviation (n-1 denominator)
// over sqrt(n); zero for a single value, error when empty.
double sem(std::span<const double> values);

}  // namespace elolab

#endif  // ELOLAB_PERMUTATION_HPP
