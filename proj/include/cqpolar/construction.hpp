#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "cqpolar/channel_model.hpp"
#include "cqpolar/linalg.hpp"
#include "cqpolar/polar_transform.hpp"

namespace cqpolar {

inline constexpr std::size_t kDefaultExactLimit = 8;
inline constexpr std::size_t kMaxExactLimit = 10;
inline constexpr double kTieTolerance = 1e-9;

enum class ProfileMode { kExact, kSurrogateUpper };

std::string_view profile_mode_name(ProfileMode mode);
std::optional<ProfileMode> parse_profile_mode(std::string_view name);

/// Per-synthesized-channel root fidelities sqrt(F(W_N^(i))), i = 0..N-1.
struct FidelityProfile {
  std::size_t n = 0;
  std::vector<double> sqrt_f;
  ProfileMode mode = ProfileMode::kSurrogateUpper;
};

/// Deterministic upper-bound recursion. Index i applies one branch per bit of
/// its binary expansion, most significant first: 0 -> min(1, 2f - f^2), 1 -> f^2.
FidelityProfile surrogate_profile(std::size_t n, double sqrt_f0);

/// Position-wise pins for the suffix average: -1 free, 0/1 fixed value.
using SuffixPins = std::span<const std::int8_t>;

/// Uniform mixture of |psi_{u G_N}><psi_{u G_N}| over every completion of
/// `prefix` to length n. Positions at or after the prefix with a pin of 0/1 are
/// held fixed instead of averaged; an empty `pins` averages every suffix bit.
DensityMatrix exact_averaged_state(std::span<const std::uint8_t> prefix, std::size_t n,
                                   const QubitEmbedding& embedding, SuffixPins pins = {},
                                   std::size_t exact_limit = kDefaultExactLimit);

/// Root fidelity of split channel `index` (0-based): the 2^{-index}-weighted sum
/// over prefixes of the root fidelity between the two averaged conditional states.
/// Each term is evaluated as the trace norm of the cross-Gram matrix of the two
/// pure-state ensembles, which equals ||sqrt(rho0) sqrt(rho1)||_1 without taking
/// square roots of near-zero eigenvalues.
double exact_split_root_fidelity(std::size_t n, std::size_t index, const QubitEmbedding& embedding,
                                 std::size_t exact_limit = kDefaultExactLimit);

/// F(W_N^(index)) = exact_split_root_fidelity^2.
double exact_split_fidelity(std::size_t n, std::size_t index, const QubitEmbedding& embedding,
                            std::size_t exact_limit = kDefaultExactLimit);

FidelityProfile exact_profile(std::size_t n, const QubitEmbedding& embedding,
                              std::size_t exact_limit = kDefaultExactLimit, unsigned threads = 1);

/// Holevo information of split channel `index` including its classical prefix register.
double split_holevo_information(std::size_t n, std::size_t index, const QubitEmbedding& embedding,
                                std::size_t exact_limit = kDefaultExactLimit);

struct SelectionRule {
  enum class Kind { kThreshold, kTargetRate };
  Kind kind = Kind::kTargetRate;
  double beta = 0.45;
  std::size_t k = 0;

  static SelectionRule threshold(double beta) { return {Kind::kThreshold, beta, 0}; }
  static SelectionRule target_rate(std::size_t k) { return {Kind::kTargetRate, 0.0, k}; }
};

struct FrozenChoice {
  bool random = false;
  std::uint64_t seed = 0;
};

struct PolarCode {
  std::size_t n = 0;
  std::vector<std::size_t> info_set;  // sorted ascending
  BitBlock frozen_values;             // one bit per index of the complement, ascending
  FidelityProfile profile;
  std::optional<double> energy;  // channel energy the code was built for, if known

  std::size_t k() const { return info_set.size(); }
  double rate() const { return n == 0 ? 0.0 : static_cast<double>(k()) / static_cast<double>(n); }

  /// 1 at information positions.
  std::vector<std::uint8_t> info_mask() const;
  std::vector<std::size_t> frozen_set() const;

  /// Full u^N from information bits (in info_set order) and the stored frozen values.
  BitBlock assemble(std::span<const std::uint8_t> info_bits) const;
  BitBlock assemble(std::span<const std::uint8_t> info_bits,
                    std::span<const std::uint8_t> frozen_bits) const;
  BitBlock info_bits(std::span<const std::uint8_t> u) const;

  /// Throws ParameterError when the structure is inconsistent.
  void validate() const;
};

/// Threshold: sqrt(F_i) < 2^{-N^beta}. Target rate: the k smallest entries, ties
/// to the lower index. An empty set under the threshold rule is returned as-is.
PolarCode select_information_set(const FidelityProfile& profile, const SelectionRule& rule,
                                 const FrozenChoice& frozen = {});

struct ErrorBound {
  double raw;
  double clamped;
};

/// Upper bound on the frozen-averaged SC block error: 2 sqrt(sum_{i in A} sqrt(F_i) / 2).
ErrorBound fidelity_error_bound(const PolarCode& code);

/// Fraction of indices with sqrt(F_i) < 2^{-N^beta}.
double polarized_fraction(const FidelityProfile& profile, double beta);

}  // namespace cqpolar
