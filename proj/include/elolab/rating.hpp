#ifndef ELOLAB_RATING_HPP
#define ELOLAB_RATING_HPP

#include <string>
#include <utility>

namespace elolab {

// How a match with no winner is scored.
//   exclude:    tied matches are dropped from replays (the default).
//   half_score: both sides receive S = 0.5.
enum class TiePolicy { exclude, half_score };

// Hyperparameters of the rating update. With the defaults, a 400-point
// rating advantage corresponds to 10:1 expected odds.
struct RatingConfig {
  double initial_rating = 1400.0;
  double k_factor = 16.0;
  double scale_divisor = 400.0;
  double odds_base = 10.0;
  TiePolicy tie_policy = TiePolicy::exclude;

  // Throws std::invalid_argument if any field is out of range.
  void validate() const;
};

struct Rating {
  std::string model_id;
  double value = 0.0;
};

// Expected score of the first player given both ratings:
//   E_a = 1 / (1 + base^((r_b - r_a) / scale)).
// Complementary by construction: expected_score(a, b) + expected_score(b, a)
// equals 1 up to rounding. Throws on non-finite input.
double expected_score(double r_a, double r_b, const RatingConfig& config);

// Post-match ratings for both players given the first player's actual score
// s_a in {0, 0.5, 1}. Both sides move by the same amount in opposite
// directions, so the rating sum is conserved. s_a = 0.5 requires
// tie_policy = half_score.
std::pair<double, double> update_pair(double r_a, double r_b, double s_a,
                                      const RatingConfig& config);

// Rating advantage at which the expected score equals p; the analytic
// inverse of expected_score, gap = scale * log_base(p / (1 - p)). This is
// the fixed point a long win/loss sequence with win probability p drifts
// toward, independent of the update path. Requires 0 < p < 1.
double equilibrium_gap(double p, const RatingConfig& config);

}  // namespace elolab

#endif  // ELOLAB_RATING_HPP
