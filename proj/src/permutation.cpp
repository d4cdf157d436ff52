#include "elolab/permutation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <utility>

#include "elolab/rng.hpp"

namespace elolab {

namespace {

// Permutations are aggregated in fixed blocks of this size; blocks merge in
// index order, which pins the floating-point reduction tree regardless of
// how many threads computed them.
constexpr std::size_t kPermBlock = 64;

std::vector<std::string> collect_model_ids(
    std::span<const MatchRecord> sequence) {
  std::vector<std::string> ids;
  for (const MatchRecord& record : sequence) {
    if (record.model_a == record.model_b) {
      throw std::invalid_argument("match record pits a model against itself: " +
                                  record.model_a);
    }
    ids.push_back(record.model_a);
    ids.push_back(record.model_b);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

// (model_a index, model_b index) per record, so replays do no string lookups.
std::vector<std::pair<std::uint32_t, std::uint32_t>> index_pairs(
    std::span<const MatchRecord> sequence,
    const std::vector<std::string>& model_ids) {
  std::unordered_map<std::string, std::uint32_t> index;
  for (std::uint32_t i = 0; i < model_ids.size(); ++i) index[model_ids[i]] = i;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  pairs.reserve(sequence.size());
  for (const MatchRecord& record : sequence) {
    pairs.emplace_back(index.at(record.model_a), index.at(record.model_b));
  }
  return pairs;
}

double score_for(Outcome outcome) {
  switch (outcome) {
    case Outcome::a_wins: return 1.0;
    case Outcome::b_wins: return 0.0;
    case Outcome::tie: return 0.5;
  }
  throw std::invalid_argument("unknown outcome enum value");
}

// Walks the sequence in the given order, applying the rating update and
// invoking on_row(ratings) after every processed (non-skipped) match.
template <typename RowFn>
std::int64_t replay_core(
    std::span<const MatchRecord> sequence,
    std::span<const std::pair<std::uint32_t, std::uint32_t>> pairs,
    std::span<const std::size_t> order, const RatingConfig& config,
    bool strict_ties, std::vector<double>& ratings, RowFn&& on_row) {
  std::int64_t skipped = 0;
  for (std::size_t pos : order) {
    const MatchRecord& record = sequence[pos];
    if (record.outcome == Outcome::tie &&
        config.tie_policy == TiePolicy::exclude) {
      if (strict_ties) {
        throw std::invalid_argument(
            "replay: tie at sequence position " + std::to_string(pos) +
            " but tie_policy is exclude");
      }
      ++skipped;
      continue;
    }
    auto [a, b] = pairs[pos];
    auto [r_a, r_b] =
        update_pair(ratings[a], ratings[b], score_for(record.outcome), config);
    ratings[a] = r_a;
    ratings[b] = r_b;
    on_row(std::span<const double>(ratings));
  }
  return skipped;
}

// Running per-element mean and sum of squared deviations (Welford).
struct MomentBlock {
  std::int64_t count = 0;
  std::vector<double> mean;
  std::vector<double> m2;

  explicit MomentBlock(std::size_t size = 0) : mean(size, 0.0), m2(size, 0.0) {}

  void add(std::size_t offset, std::span<const double> values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      std::size_t at = offset + i;
      double delta = values[i] - mean[at];
      mean[at] += delta / static_cast<double>(count);
      m2[at] += delta * (values[i] - mean[at]);
    }
  }

  void begin_sample() { ++count; }

  // Chan's pairwise combine; callers must merge blocks in a fixed order.
  void merge(const MomentBlock& other) {
    if (other.count == 0) return;
    if (count == 0) {
      *this = other;
      return;
    }
    double n_a = static_cast<double>(count);
    double n_b = static_cast<double>(other.count);
    double n = n_a + n_b;
    for (std::size_t i = 0; i < mean.size(); ++i) {
      double delta = other.mean[i] - mean[i];
      mean[i] += delta * (n_b / n);
      m2[i] += other.m2[i] + delta * delta * (n_a * n_b / n);
    }
    count += other.count;
  }
};

}  // namespace

std::vector<double> Trajectory::final_ratings() const {
  if (ratings.empty()) {
    throw std::logic_error("Trajectory::final_ratings: empty trajectory");
  }
  return ratings.back();
}

std::vector<double> PermutationSummary::mean_final() const {
  std::vector<double> result(model_ids.size(), 0.0);
  for (const std::vector<double>& finals : final_ratings_per_perm) {
    for (std::size_t m = 0; m < result.size(); ++m) result[m] += finals[m];
  }
  for (double& value : result) value /= static_cast<double>(n_perms);
  return result;
}

std::vector<double> PermutationSummary::sem_final() const {
  std::vector<double> result(model_ids.size(), 0.0);
  std::vector<double> column(final_ratings_per_perm.size());
  for (std::size_t m = 0; m < model_ids.size(); ++m) {
    for (std::size_t p = 0; p < final_ratings_per_perm.size(); ++p) {
      column[p] = final_ratings_per_perm[p][m];
    }
    result[m] = sem(column);
  }
  return result;
}

Trajectory replay(std::span<const MatchRecord> sequence,
                  const RatingConfig& config, bool strict_ties) {
  config.validate();
  if (sequence.empty()) {
    throw std::invalid_argument("replay: sequence is empty");
  }
  Trajectory trajectory;
  trajectory.model_ids = collect_model_ids(sequence);
  auto pairs = index_pairs(sequence, trajectory.model_ids);
  std::vector<double> ratings(trajectory.model_ids.size(),
                              config.initial_rating);
  auto order = identity_permutation(sequence.size());
  trajectory.skipped_ties = replay_core(
      sequence, pairs, order, config, strict_ties, ratings,
      [&trajectory](std::span<const double> row) {
        trajectory.ratings.emplace_back(row.begin(), row.end());
      });
  return trajectory;
}

PermutationSummary run_permutations(std::span<const MatchRecord> sequence,
                                    std::int64_t n_perms,
                                    std::uint64_t master_seed,
                                    const RatingConfig& config,
                                    const RunOptions& options) {
  config.validate();
  if (n_perms < 1) {
    throw std::invalid_argument("run_permutations: n_perms must be at least 1");
  }
  if (sequence.empty()) {
    throw std::invalid_argument("run_permutations: sequence is empty");
  }

  // Drop ties up front under the exclude policy so every permutation shares
  // one match-index axis.
  std::vector<MatchRecord> filtered;
  std::int64_t skipped_ties = 0;
  if (config.tie_policy == TiePolicy::exclude) {
    for (const MatchRecord& record : sequence) {
      if (record.outcome == Outcome::tie) {
        ++skipped_ties;
      } else {
        filtered.push_back(record);
      }
    }
    if (filtered.empty()) {
      throw std::invalid_argument(
          "run_permutations: no playable matches after tie exclusion");
    }
    sequence = filtered;
  }

  PermutationSummary summary;
  summary.model_ids = collect_model_ids(sequence);
  summary.n_perms = n_perms;
  summary.skipped_ties = skipped_ties;

  const std::size_t n_models = summary.model_ids.size();
  const std::size_t n_rows = sequence.size();
  const std::size_t cells = n_rows * n_models;
  const auto pairs = index_pairs(sequence, summary.model_ids);

  summary.final_ratings_per_perm.assign(static_cast<std::size_t>(n_perms),
                                        std::vector<double>(n_models, 0.0));
  if (options.keep_trajectories) {
    summary.trajectories.resize(static_cast<std::size_t>(n_perms));
  }

  const std::size_t n_blocks =
      (static_cast<std::size_t>(n_perms) + kPermBlock - 1) / kPermBlock;
  std::vector<MomentBlock> blocks;
  if (options.track_per_match) {
    blocks.assign(n_blocks, MomentBlock(cells));
  }

  auto run_one = [&](std::size_t perm, std::vector<double>& ratings,
                     std::vector<std::size_t>& order, MomentBlock* block) {
    // order is the identity on entry; permutation 0 replays the input order.
    if (perm != 0) {
      SplitMix64 rng(derive_seed(master_seed, "perm", perm));
      fisher_yates_shuffle(order, rng);
    }
    std::fill(ratings.begin(), ratings.end(), config.initial_rating);
    Trajectory* trajectory =
        options.keep_trajectories ? &summary.trajectories[perm] : nullptr;
    if (trajectory) {
      trajectory->model_ids = summary.model_ids;
      trajectory->ratings.reserve(n_rows);
    }
    std::size_t row = 0;
    if (block) block->begin_sample();
    replay_core(sequence, pairs, order, config, /*strict_ties=*/false, ratings,
                [&](std::span<const double> values) {
                  if (block) block->add(row * n_models, values);
                  if (trajectory) {
                    trajectory->ratings.emplace_back(values.begin(),
                                                     values.end());
                  }
                  ++row;
                });
    summary.final_ratings_per_perm[perm].assign(ratings.begin(), ratings.end());
  };

  auto run_block = [&](std::size_t block_index) {
    std::size_t begin = block_index * kPermBlock;
    std::size_t end = std::min(begin + kPermBlock,
                               static_cast<std::size_t>(n_perms));
    std::vector<double> ratings(n_models);
    std::vector<std::size_t> order(n_rows);
    MomentBlock* block = options.track_per_match ? &blocks[block_index] : nullptr;
    for (std::size_t perm = begin; perm < end; ++perm) {
      std::iota(order.begin(), order.end(), std::size_t{0});
      run_one(perm, ratings, order, block);
    }
  };

  int n_threads = std::max(1, options.n_threads);
  if (n_threads == 1 || n_blocks <= 1) {
    for (std::size_t b = 0; b < n_blocks; ++b) run_block(b);
  } else {
    std::atomic<std::size_t> next_block{0};
    std::vector<std::thread> workers;
    std::size_t worker_count =
        std::min<std::size_t>(static_cast<std::size_t>(n_threads), n_blocks);
    workers.reserve(worker_count);
    for (std::size_t w = 0; w < worker_count; ++w) {
      workers.emplace_back([&]() {
        while (true) {
          std::size_t b = next_block.fetch_add(1);
          if (b >= n_blocks) break;
          run_block(b);
        }
      });
    }
    for (std::thread& worker : workers) worker.join();
  }

  if (options.track_per_match) {
    MomentBlock total(cells);
    for (const MomentBlock& block : blocks) total.merge(block);
    summary.mean_ratings.assign(n_rows, std::vector<double>(n_models, 0.0));
    summary.sem_ratings.assign(n_rows, std::vector<double>(n_models, 0.0));
    double n = static_cast<double>(total.count);
    for (std::size_t row = 0; row < n_rows; ++row) {
      for (std::size_t m = 0; m < n_models; ++m) {
        std::size_t at = row * n_models + m;
        summary.mean_ratings[row][m] = total.mean[at];
        summary.sem_ratings[row][m] =
            total.count > 1
                ? std::sqrt(total.m2[at] / (n - 1.0)) / std::sqrt(n)
                : 0.0;
      }
    }
  }
  return summary;
}

double sem(std::span<const double> values) {
  if (values.empty()) {
    throw std::invalid_argument("sem: empty input");
  }
  if (values.size() == 1) return 0.0;
  double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double sum_sq = 0.0;
  for (double v : values) sum_sq += (v - mean) * (v - mean);
  return std::sqrt(sum_sq / (n - 1.0)) / std::sqrt(n);
}

}  // namespace elolab
