#include "elolab/feedback.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "elolab/rng.hpp"

namespace elolab {

namespace {

bool valid_probability(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

// C(n, k) as a double, exact for small operands.
double choose(std::int64_t n, std::int64_t k) {
  k = std::min(k, n - k);
  double result = 1.0;
  for (std::int64_t i = 1; i <= k; ++i) {
    result = result * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return result;
}

double log_factorial(std::int64_t n) {
  return std::lgamma(static_cast<double>(n) + 1.0);
}

// p^k with the convention 0^0 = 1, safe in log-space callers.
double log_pow_term(double p, std::int64_t k) {
  if (k == 0) return 0.0;
  return static_cast<double>(k) * std::log(p);
}

constexpr std::int64_t kDirectPmfLimit = 100;

}  // namespace

void PairSpec::validate() const {
  if (model_a == model_b) {
    throw std::invalid_argument("PairSpec: models must be distinct");
  }
  if (!valid_probability(p_a_wins) || !valid_probability(p_tie)) {
    throw std::invalid_argument("PairSpec: probabilities must lie in [0, 1]");
  }
  if (p_a_wins + p_tie > 1.0) {
    throw std::invalid_argument("PairSpec: p_a_wins + p_tie must not exceed 1");
  }
  if (n_games < 1) {
    throw std::invalid_argument("PairSpec: n_games must be at least 1");
  }
}

void ScenarioSpec::validate() const {
  if (pair_specs.empty()) {
    throw std::invalid_argument("ScenarioSpec: no pair specs");
  }
  for (const PairSpec& pair : pair_specs) pair.validate();
  if (name != Scenario::custom && pair_specs.size() != 2) {
    throw std::invalid_argument(
        "ScenarioSpec: named scenarios expand to exactly two pairings");
  }
}

std::vector<std::string> ScenarioSpec::chain_models() const {
  std::vector<std::string> models;
  auto add = [&models](const std::string& id) {
    if (std::find(models.begin(), models.end(), id) == models.end()) {
      models.push_back(id);
    }
  };
  for (const PairSpec& pair : pair_specs) {
    add(pair.model_a);
    add(pair.model_b);
  }
  return models;
}

Scenario scenario_from_name(const std::string& name) {
  if (name == "king") return Scenario::king;
  if (name == "rook") return Scenario::rook;
  if (name == "bishop") return Scenario::bishop;
  if (name == "knight") return Scenario::knight;
  if (name == "custom") return Scenario::custom;
  throw std::invalid_argument("unknown scenario: " + name);
}

std::string scenario_name(Scenario scenario) {
  switch (scenario) {
    case Scenario::king: return "king";
    case Scenario::rook: return "rook";
    case Scenario::bishop: return "bishop";
    case Scenario::knight: return "knight";
    case Scenario::custom: return "custom";
  }
  throw std::invalid_argument("unknown scenario enum value");
}

ScenarioSpec make_scenario(Scenario scenario, std::int64_t n_games,
                           std::uint64_t interleave_seed) {
  double p_ab = 0.0;
  double p_bc = 0.0;
  switch (scenario) {
    case Scenario::king: p_ab = 0.75; p_bc = 0.75; break;
    case Scenario::rook: p_ab = 0.75; p_bc = 0.51; break;
    case Scenario::bishop: p_ab = 0.51; p_bc = 0.75; break;
    case Scenario::knight: p_ab = 0.54; p_bc = 0.51; break;
    case Scenario::custom:
      throw std::invalid_argument(
          "make_scenario: custom scenarios need explicit pair specs");
  }
  ScenarioSpec spec;
  spec.name = scenario;
  spec.pair_specs = {
      PairSpec{"A", "B", p_ab, 0.0, n_games},
      PairSpec{"B", "C", p_bc, 0.0, n_games},
  };
  spec.interleave_seed = interleave_seed;
  spec.validate();
  return spec;
}

std::vector<MatchRecord> bernoulli_outcomes(const PairSpec& pair,
                                            std::uint64_t seed) {
  if (pair.p_tie != 0.0) {
    throw std::invalid_argument(
        "bernoulli_outcomes: p_tie must be 0; use multinomial_outcomes for "
        "tie-capable pairs");
  }
  return multinomial_outcomes(pair, seed);
}

std::vector<MatchRecord> multinomial_outcomes(const PairSpec& pair,
                                              std::uint64_t seed) {
  pair.validate();
  SplitMix64 rng(seed);
  std::vector<MatchRecord> records;
  records.reserve(static_cast<std::size_t>(pair.n_games));
  for (std::int64_t i = 0; i < pair.n_games; ++i) {
    double u = rng.next_unit();
    Outcome outcome;
    if (u < pair.p_a_wins) {
      outcome = Outcome::a_wins;
    } else if (u < pair.p_a_wins + pair.p_tie) {
      outcome = Outcome::tie;
    } else {
      outcome = Outcome::b_wins;
    }
    records.push_back(MatchRecord{pair.model_a, pair.model_b, outcome,
                                  static_cast<std::size_t>(i)});
  }
  return records;
}

double binomial_pmf(std::int64_t k, std::int64_t n, double p) {
  if (n < 0 || k < 0 || k > n) {
    throw std::invalid_argument("binomial_pmf: need 0 <= k <= n");
  }
  if (!valid_probability(p)) {
    throw std::invalid_argument("binomial_pmf: p must lie in [0, 1]");
  }
  if (p == 0.0) return k == 0 ? 1.0 : 0.0;
  if (p == 1.0) return k == n ? 1.0 : 0.0;
  if (n <= kDirectPmfLimit) {
    return choose(n, k) * std::pow(p, static_cast<double>(k)) *
           std::pow(1.0 - p, static_cast<double>(n - k));
  }
  double log_pmf = log_factorial(n) - log_factorial(k) - log_factorial(n - k) +
                   static_cast<double>(k) * std::log(p) +
                   static_cast<double>(n - k) * std::log1p(-p);
  return std::exp(log_pmf);
}

double multinomial_pmf(std::int64_t n_win, std::int64_t n_loss,
                       std::int64_t n_tie, double p_win, double p_loss,
                       double p_tie) {
  if (n_win < 0 || n_loss < 0 || n_tie < 0) {
    throw std::invalid_argument("multinomial_pmf: counts must be non-negative");
  }
  if (!valid_probability(p_win) || !valid_probability(p_loss) ||
      !valid_probability(p_tie)) {
    throw std::invalid_argument(
        "multinomial_pmf: probabilities must lie in [0, 1]");
  }
  if (std::abs(p_win + p_loss + p_tie - 1.0) > 1e-12) {
    throw std::invalid_argument("multinomial_pmf: probabilities must sum to 1");
  }
  // A zero-probability category can contribute no counts.
  if ((p_win == 0.0 && n_win > 0) || (p_loss == 0.0 && n_loss > 0) ||
      (p_tie == 0.0 && n_tie > 0)) {
    return 0.0;
  }
  std::int64_t total = n_win + n_loss + n_tie;
  if (total <= kDirectPmfLimit) {
    double coefficient = choose(total, n_win) * choose(total - n_win, n_loss);
    return coefficient * std::pow(p_win, static_cast<double>(n_win)) *
           std::pow(p_loss, static_cast<double>(n_loss)) *
           std::pow(p_tie, static_cast<double>(n_tie));
  }
  double log_pmf = log_factorial(total) - log_factorial(n_win) -
                   log_factorial(n_loss) - log_factorial(n_tie) +
                   log_pow_term(p_win, n_win) + log_pow_term(p_loss, n_loss) +
                   log_pow_term(p_tie, n_tie);
  return std::exp(log_pmf);
}

std::vector<std::pair<std::string, std::string>> enumerate_pairs(
    const std::vector<std::string>& models) {
  if (models.size() < 2) {
    throw std::invalid_argument("enumerate_pairs: need at least two models");
  }
  std::vector<std::string> sorted = models;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("enumerate_pairs: model ids must be distinct");
  }
  std::vector<std::pair<std::string, std::string>> pairs;
  pairs.reserve(sorted.size() * (sorted.size() - 1) / 2);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      pairs.emplace_back(sorted[i], sorted[j]);
    }
  }
  return pairs;
}

std::vector<MatchRecord> build_scenario_sequence(const ScenarioSpec& spec,
                                                 std::uint64_t outcome_seed) {
  spec.validate();
  std::vector<MatchRecord> sequence;
  for (std::size_t i = 0; i < spec.pair_specs.size(); ++i) {
    std::uint64_t pair_seed = derive_seed(outcome_seed, "pair-outcomes", i);
    std::vector<MatchRecord> outcomes =
        multinomial_outcomes(spec.pair_specs[i], pair_seed);
    sequence.insert(sequence.end(), outcomes.begin(), outcomes.end());
  }
  SplitMix64 shuffle_rng(derive_seed(spec.interleave_seed, "interleave", 0));
  fisher_yates_shuffle(sequence, shuffle_rng);
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    sequence[i].sequence_index = i;
  }
  return sequence;
}

}  // namespace elolab
