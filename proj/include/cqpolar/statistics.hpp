#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>

namespace cqpolar {

/// Binomial proportion with its standard error and a 95% Wilson score interval.
struct BinomialEstimate {
  std::size_t events = 0;
  std::size_t trials = 0;
  double rate = 0.0;
  double sigma = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

BinomialEstimate binomial_estimate(std::size_t events, std::size_t trials);

/// One Monte Carlo trial, as written to the trial log.
struct TrialRecord {
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  std::string message;  // information bits, index order
  std::string decoded;
  bool success = false;
  bool anomaly = false;
  double min_step_prob = 1.0;  // NaN when the arm has no measurement steps
};

inline constexpr const char* kTrialLogHeader = "trial,seed,message,decoded,success,min_step_prob";

/// Writes header and rows. Anomalous trials are logged with success=0.
void write_trial_log(std::ostream& os, std::span<const TrialRecord> records);

}  // namespace cqpolar
