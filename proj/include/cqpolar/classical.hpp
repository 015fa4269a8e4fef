#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "cqpolar/channel_model.hpp"
#include "cqpolar/construction.hpp"
#include "cqpolar/rng.hpp"
#include "cqpolar/statistics.hpp"

namespace cqpolar {

/// LLR magnitude limit; also stands in for infinite LLRs of Z-channel outputs.
inline constexpr double kLlrClamp = 40.0;

enum class Receiver { kDolinar, kHomodyne, kKennedy };

std::string_view receiver_name(Receiver receiver);
std::optional<Receiver> parse_receiver(std::string_view name);

/// Binary DMC induced by symbol-by-symbol detection of BPSK pulses.
///
/// BSC: each bit flips with probability `crossover`.
/// Z:   a transmitted 0 (displaced to the bright pulse) is read as 1 with
///      probability `crossover`; a transmitted 1 (vacuum) is always read as 1.
struct InducedDmc {
  enum class Kind { kBsc, kZ };

  Kind kind = Kind::kBsc;
  double crossover = 0.0;
  std::optional<Receiver> source;
  double bhattacharyya = 1.0;

  static InducedDmc bsc(double p);
  static InducedDmc z(double crossover);

  std::uint8_t transmit(std::uint8_t x, CounterStream& rng) const;
  /// log P(y|0)/P(y|1), clamped to [-kLlrClamp, kLlrClamp].
  double llr(std::uint8_t y) const;
  double likelihood(std::uint8_t y, std::uint8_t x) const;
};

InducedDmc induce_dmc(const BpskChannel& channel, Receiver receiver);

/// Same recursion tree as surrogate_profile, seeded with a Bhattacharyya parameter.
FidelityProfile bhattacharyya_profile(std::size_t n, double z0);

/// 2 atanh(tanh(a/2) tanh(b/2)), evaluated without overflow for |a|,|b| <= kLlrClamp.
double check_node(double a, double b);
/// b + (-1)^u a.
double variable_node(double a, double b, std::uint8_t u);

/// Successive-cancellation estimate of u^N from channel LLRs of x = u G_N.
BitBlock classical_sc_decode(std::span<const double> llr, const PolarCode& code);

struct ClassicalRun {
  std::vector<TrialRecord> records;
  BinomialEstimate block_error;
  BinomialEstimate bit_error;  // over information bits
};

/// Monte Carlo: uniform messages, encode, pass through the DMC, SC-decode.
/// Trial t draws from streams keyed by (seed, t), so results do not depend on `threads`.
ClassicalRun simulate_classical(const InducedDmc& dmc, const PolarCode& code, std::size_t trials,
                                std::uint64_t seed, unsigned threads = 1);

}  // namespace cqpolar
