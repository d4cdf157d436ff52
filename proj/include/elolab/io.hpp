#ifndef ELOLAB_IO_HPP
#define ELOLAB_IO_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "elolab/experiments.hpp"
#include "elolab/feedback.hpp"
#include "elolab/permutation.hpp"

namespace elolab {

// Parse or schema failure in a feedback file; the message carries the path
// and, for row-level problems, the 1-based line number.
class FeedbackFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Winner { a, b, tie };

// One annotated comparison as stored on disk. The file format is a UTF-8 CSV
// with header `prompt_id,model_a,model_b,winner`; the winner column holds
// the literal token `model_a`, `model_b`, or `tie`. Fields must not contain
// commas, quotes, or newlines.
struct FeedbackRecord {
  std::string prompt_id;
  std::string model_a;
  std::string model_b;
  Winner winner = Winner::a;
};

struct LoadResult {
  std::vector<MatchRecord> records;  // indices reassigned over kept records
  std::int64_t ties_skipped = 0;
  std::vector<std::string> warnings;
};

// Raw rows, exactly as stored. Throws FeedbackFormatError on a missing file,
// header mismatch, wrong field count, unknown winner token, or self-match.
std::vector<FeedbackRecord> read_feedback(const std::filesystem::path& path);

// Inverse of read_feedback; rejects fields the minimal CSV cannot carry.
void write_feedback(const std::filesystem::path& path,
                    std::span<const FeedbackRecord> records);

// Feedback rows for a generated sequence, with synthesized prompt ids.
std::vector<FeedbackRecord> to_feedback(std::span<const MatchRecord> records);

// Reads and converts to match records. Ties are dropped (exclude) or kept
// (half_score); either way the tally is reported.
LoadResult load_feedback(const std::filesystem::path& path,
                         TiePolicy tie_policy);

// Per-direction aggregate for one matchup. win_rate = wins / (wins + losses)
// over non-tie games; absent when the matchup has only ties.
struct MatchupRates {
  std::string model;
  std::string opponent;
  std::int64_t wins = 0;
  std::int64_t losses = 0;
  std::int64_t ties = 0;
  std::optional<double> win_rate;
};

// Both directions of every matchup, sorted by (model, opponent).
struct WinRateTable {
  std::vector<MatchupRates> rows;
};

WinRateTable win_rates(std::span<const MatchRecord> records);

enum class EmitFormat { csv, jsonl };

EmitFormat format_from_name(const std::string& name);

// All emitters write byte-deterministic output: fixed 4-decimal numbers,
// fixed column/key order, "\n" line endings. Unwritable paths throw.

// CSV: match_index, then mean_<model>,sem_<model> per sorted model.
void emit_summary(const PermutationSummary& summary,
                  const std::filesystem::path& path,
                  EmitFormat format = EmitFormat::csv);

// CSV: one block per row label; a matrix of K rows by n_perms columns.
void emit_grid(const SweepGrid& grid, const std::filesystem::path& path,
               EmitFormat format = EmitFormat::csv);

// JSONL: one object per configuration; CSV: one row per (config, model).
void emit_report(const TransitivityReport& report,
                 const std::filesystem::path& path,
                 EmitFormat format = EmitFormat::jsonl);

void emit_win_rates(const WinRateTable& table,
                    const std::filesystem::path& path,
                    EmitFormat format = EmitFormat::csv);

}  // namespace elolab

#endif  // ELOLAB_IO_HPP
