#include "cqpolar/statistics.hpp"

#include <algorithm>
#include <cmath>

#include "cqpolar/code_file.hpp"

namespace cqpolar {

BinomialEstimate binomial_estimate(std::size_t events, std::size_t trials) {
  BinomialEstimate est;
  est.events = events;
  est.trials = trials;
  if (trials == 0) {
    est.ci_high = 1.0;
    return est;
  }
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(events) / n;
  est.rate = p;
  est.sigma = std::sqrt(p * (1.0 - p) / n);
  constexpr double z = 1.959963984540054;
  const double denom = 1.0 + z * z / n;
  const double centre = (p + z * z / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
  est.ci_low = std::max(0.0, centre - half);
  est.ci_high = std::min(1.0, centre + half);
  if (events == 0) est.ci_low = 0.0;
  if (events == trials) est.ci_high = 1.0;
  return est;
}

void write_trial_log(std::ostream& os, std::span<const TrialRecord> records) {
  os << kTrialLogHeader << '\n';
  for (const auto& r : records) {
    os << r.trial << ',' << r.seed << ',' << r.message << ',' << r.decoded << ','
       << (r.success && !r.anomaly ? 1 : 0) << ',';
    if (!std::isnan(r.min_step_prob)) os << format_real(r.min_step_prob);
    os << '\n';
  }
}

}  // namespace cqpolar
