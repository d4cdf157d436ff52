#ifndef ELOLAB_FEEDBACK_HPP
#define ELOLAB_FEEDBACK_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace elolab {

enum class Outcome { a_wins, b_wins, tie };

// One pairwise comparison between two identified models.
struct MatchRecord {
  std::string model_a;
  std::string model_b;
  Outcome outcome = Outcome::a_wins;
  std::size_t sequence_index = 0;
};

// Generator parameters for one matchup: n_games i.i.d. draws where the first
// model wins with probability p_a_wins and the match ties with p_tie.
struct PairSpec {
  std::string model_a;
  std::string model_b;
  double p_a_wins = 0.5;
  double p_tie = 0.0;
  std::int64_t n_games = 1000;

  void validate() const;
};

// Three-model transitivity scenarios: each expands to an A-vs-B and a B-vs-C
// matchup whose win probabilities shape how separable the chain is.
//   king:   0.75 / 0.75   (both pairs clearly separated)
//   rook:   0.75 / 0.51   (B vs C nearly even)
//   bishop: 0.51 / 0.75   (A vs B nearly even)
//   knight: 0.54 / 0.51   (both pairs nearly even)
enum class Scenario { king, rook, bishop, knight, custom };

struct ScenarioSpec {
  Scenario name = Scenario::custom;
  std::vector<PairSpec> pair_specs;
  std::uint64_t interleave_seed = 0;

  void validate() const;
  // Distinct model ids in chain order (first pair's A, then B, then each
  // subsequent new model); doubles as the expected ranking by construction.
  std::vector<std::string> chain_models() const;
};

Scenario scenario_from_name(const std::string& name);
std::string scenario_name(Scenario scenario);

// Builds a named scenario over models A, B, C with n_games per pairing.
ScenarioSpec make_scenario(Scenario scenario, std::int64_t n_games,
                           std::uint64_t interleave_seed);

// n_games i.i.d. win/loss draws for the pair (requires p_tie = 0);
// deterministic for a fixed seed.
std::vector<MatchRecord> bernoulli_outcomes(const PairSpec& pair,
                                            std::uint64_t seed);

// n_games i.i.d. draws over {a_wins, tie, b_wins} with probabilities
// (p_a_wins, p_tie, 1 - p_a_wins - p_tie). Reduces to bernoulli_outcomes
// bit-for-bit when p_tie = 0.
std::vector<MatchRecord> multinomial_outcomes(const PairSpec& pair,
                                              std::uint64_t seed);

// P(k wins in n trials) = C(n,k) p^k (1-p)^(n-k). Direct evaluation for
// small n, log-space via lgamma beyond n = 100.
double binomial_pmf(std::int64_t k, std::int64_t n, double p);

// Win/loss/tie counts over N = n_win + n_loss + n_tie trials:
// N!/(n_win! n_loss! n_tie!) * p_win^n_win * p_loss^n_loss * p_tie^n_tie.
// Probabilities must sum to 1 within 1e-12.
double multinomial_pmf(std::int64_t n_win, std::int64_t n_loss,
                       std::int64_t n_tie, double p_win, double p_loss,
                       double p_tie);

// All C(n,2) unordered pairs of distinct models, lexicographically ordered.
std::vector<std::pair<std::string, std::string>> enumerate_pairs(
    const std::vector<std::string>& models);

// Generates each pairing's outcomes from seeds derived off outcome_seed, then
// interleaves the concatenation with one seeded uniform shuffle. The shuffle
// reorders but never alters the per-pair outcome multiset.
std::vector<MatchRecord> build_scenario_sequence(const ScenarioSpec& spec,
                                                 std::uint64_t outcome_seed);

}  // namespace elolab

#endif  // ELOLAB_FEEDBACK_HPP
