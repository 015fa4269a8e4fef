#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "cqpolar/capacity.hpp"
#include "cqpolar/classical.hpp"
#include "cqpolar/construction.hpp"
#include "cqpolar/quantum_decoder.hpp"
#include "cqpolar/statistics.hpp"

namespace cqpolar {

struct ReportRow {
  std::string metric;
  double value = 0.0;
  std::optional<double> ci_low;
  std::optional<double> ci_high;
  std::string kind;  // capacity | exact | empirical | bound | check
};

/// Metadata block plus CSV result rows. Everything except the timestamp line is
/// a deterministic function of the parameters and seed.
struct RunReport {
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::uint64_t seed = 0;
  std::string timestamp;
  std::vector<std::string> notes;
  std::vector<ReportRow> rows;

  void add(std::string metric, double value, std::string kind);
  void add(std::string metric, const BinomialEstimate& estimate, std::string kind);
  const ReportRow* find(std::string_view metric) const;
};

void write_report(std::ostream& os, const RunReport& report);
std::string utc_timestamp();

// --- quantum Monte Carlo -----------------------------------------------------

struct QuantumRun {
  std::vector<TrialRecord> records;
  BinomialEstimate block_error;  // anomalous trials excluded
  std::size_t anomalies = 0;
};

/// Uniform messages over the information set with the code's frozen values;
/// trial t uses streams keyed by (seed, t).
QuantumRun simulate_quantum(const QuantumScDecoder& decoder, std::size_t trials,
                            std::uint64_t seed, unsigned threads = 1);

// --- commands ----------------------------------------------------------------

struct CapacityConfig {
  double e_min = 1e-4;
  double e_max = 1.0;
  int points = 50;
  bool logarithmic = true;
  std::vector<Scheme> schemes = all_schemes();
  TableOptions table;
};

std::vector<CapacityPoint> run_capacity(const CapacityConfig& config);

struct ConstructConfig {
  std::size_t n = 8;
  double energy = 0.25;
  double eta = 1.0;
  ProfileMode mode = ProfileMode::kExact;
  SelectionRule rule = SelectionRule::target_rate(1);
  FrozenChoice frozen;
  std::size_t exact_limit = kDefaultExactLimit;
  unsigned threads = 1;
};

struct ConstructResult {
  PolarCode code;
  ErrorBound bound;
  std::vector<std::string> comments;  // metadata lines for the code file
};

ConstructResult run_construct(const ConstructConfig& config);

enum class Arm { kQuantumExact, kQuantumMc, kClassicalMc };

std::string_view arm_name(Arm arm);
std::optional<Arm> parse_arm(std::string_view name);

struct SimulateConfig {
  Arm arm = Arm::kQuantumExact;
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::optional<double> energy;  // overrides the code file's E
  double eta = 1.0;
  Receiver receiver = Receiver::kDolinar;
  FrozenAveraging averaging = FrozenAveraging::kStored;
  FrozenHandling frozen_handling = FrozenHandling::kAverageAll;
  std::size_t exact_limit = kDefaultExactLimit;
  std::size_t message_limit = kDefaultMessageLimit;
};

struct SimulateResult {
  RunReport report;
  std::vector<TrialRecord> trials;  // empty for the exact arm
  std::size_t anomalies = 0;
  bool bound_holds = true;
};

SimulateResult run_simulate(const PolarCode& code, const SimulateConfig& config);

struct CompareConfig {
  double energy = 0.25;
  double eta = 1.0;
  std::size_t n = 8;
  std::size_t k = 3;
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  Receiver receiver = Receiver::kDolinar;
  std::size_t exact_limit = kDefaultExactLimit;
};

struct CompareResult {
  RunReport report;
  std::vector<TrialRecord> classical_trials;
  std::vector<TrialRecord> quantum_trials;
  std::size_t anomalies = 0;
};

CompareResult run_compare(const CompareConfig& config);

}  // namespace cqpolar
