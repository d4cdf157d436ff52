#include "elolab/rating.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace elolab {

void RatingConfig::validate() const {
  if (!std::isfinite(initial_rating)) {
    throw std::invalid_argument("RatingConfig: initial_rating must be finite");
  }
  if (!(k_factor > 0.0) || !std::isfinite(k_factor)) {
    throw std::invalid_argument("RatingConfig: k_factor must be positive");
  }
  if (!(scale_divisor > 0.0) || !std::isfinite(scale_divisor)) {
    throw std::invalid_argument("RatingConfig: scale_divisor must be positive");
  }
  if (!(odds_base > 1.0) || !std::isfinite(odds_base)) {
    throw std::invalid_argument("RatingConfig: odds_base must exceed 1");
  }
}

double expected_score(double r_a, double r_b, const RatingConfig& config) {
  config.validate();
  if (!std::isfinite(r_a) || !std::isfinite(r_b)) {
    throw std::invalid_argument("expected_score: ratings must be finite");
  }
  return 1.0 /
         (1.0 + std::pow(config.odds_base, (r_b - r_a) / config.scale_divisor));
}

std::pair<double, double> update_pair(double r_a, double r_b, double s_a,
                                      const RatingConfig& config) {
  if (s_a != 0.0 && s_a != 1.0 && s_a != 0.5) {
    throw std::invalid_argument("update_pair: score must be 0, 0.5 or 1, got " +
                                std::to_string(s_a));
  }
  if (s_a == 0.5 && config.tie_policy != TiePolicy::half_score) {
    throw std::invalid_argument(
        "update_pair: score 0.5 requires tie_policy = half_score");
  }
  double e_a = expected_score(r_a, r_b, config);
  // One shared delta keeps the rating sum conserved to the last bit short of
  // the two additions' rounding.
  double delta = config.k_factor * (s_a - e_a);
  return {r_a + delta, r_b - delta};
}

double equilibrium_gap(double p, const RatingConfig& config) {
  config.validate();
  if (!(p > 0.0) || !(p < 1.0)) {
    throw std::invalid_argument(
        "equilibrium_gap: probability must lie strictly between 0 and 1");
  }
  return config.scale_divisor * std::log(p / (1.0 - p)) /
         std::log(config.odds_base);
}

}  // namespace elolab
