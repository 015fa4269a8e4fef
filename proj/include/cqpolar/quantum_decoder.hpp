#pragma once

#include <cstddef>
#include <cstdint>
#include <list>
#include <memory>
#include <mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "cqpolar/channel_model.hpp"
#include "cqpolar/construction.hpp"
#include "cqpolar/linalg.hpp"
#include "cqpolar/rng.hpp"

namespace cqpolar {

inline constexpr std::size_t kDefaultMessageLimit = 12;

/// Two-outcome projective measurement {Pi_0, Pi_1 = I - Pi_0}.
///
/// Only the smaller of the two eigenspaces is stored as orthonormal columns.
class HelstromProjector {
 public:
  HelstromProjector(Eigen::MatrixXd basis, bool spans_zero_outcome, Eigen::Index dimension);

  Eigen::Index dimension() const { return dimension_; }
  /// Rank of Pi_0.
  Eigen::Index zero_rank() const;

  /// Pi_outcome * v.
  Eigen::VectorXd apply(std::uint8_t outcome, const Eigen::VectorXd& v) const;
  /// <v| Pi_0 |v>.
  double zero_probability(const Eigen::VectorXd& v) const;
  /// Dense Pi_outcome.
  Eigen::MatrixXd matrix(std::uint8_t outcome) const;

 private:
  Eigen::MatrixXd basis_;
  bool spans_zero_;
  Eigen::Index dimension_;
};

/// Projector onto the nonnegative eigenspace of rho0 - rho1. Eigenvalues at or
/// above -1e-10 * max|rho0 - rho1| count as nonnegative, so ties go to outcome 0.
HelstromProjector helstrom(const DensityMatrix& rho0, const DensityMatrix& rho1);

/// Whether decision states average over frozen suffix bits too (the literal
/// split-channel definition) or hold them at their known values.
enum class FrozenHandling { kAverageAll, kConditionOnFrozen };

struct DecoderOptions {
  std::size_t exact_limit = kDefaultExactLimit;
  std::size_t message_limit = kDefaultMessageLimit;
  FrozenHandling frozen_handling = FrozenHandling::kAverageAll;
  std::size_t cache_capacity = 512;
};

/// Bounded, thread-safe LRU cache of decision projectors.
class ProjectorCache {
 public:
  struct Key {
    std::size_t index;
    std::uint64_t prefix;
    std::uint64_t pins;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const;
  };

  explicit ProjectorCache(std::size_t capacity) : capacity_(capacity) {}

  std::shared_ptr<const HelstromProjector> find(const Key& key);
  void insert(const Key& key, std::shared_ptr<const HelstromProjector> value);
  std::size_t size() const;

 private:
  using Entry = std::pair<Key, std::shared_ptr<const HelstromProjector>>;
  std::size_t capacity_;
  mutable std::mutex mutex_;
  std::list<Entry> order_;  // most recent first
  std::unordered_map<Key, std::list<Entry>::iterator, KeyHash> index_;
};

/// Result of one sequential-measurement decode.
struct DecodeTrace {
  BitBlock decoded;                       // full u^N estimate
  std::vector<double> step_probabilities;  // probability of each sampled outcome, per information index
  std::vector<double> zero_probabilities;  // <phi|Pi_0|phi> at each information index
  std::vector<double> one_probabilities;   // <phi|Pi_1|phi> at each information index
  std::vector<double> post_norms;          // squared norm of the unnormalized branch after each step
  bool success = false;
  bool anomaly = false;

  double min_step_prob() const;
};

enum class FrozenAveraging { kStored, kAll, kSampled };

struct BlockErrorOptions {
  FrozenAveraging averaging = FrozenAveraging::kStored;
  std::size_t samples = 16;  // for kSampled
  std::uint64_t seed = 0;    // for kSampled
  unsigned threads = 1;
};

/// Exact simulation of the quantum successive-cancellation decoder for a code
/// on the BPSK channel. Decision projectors are built per decoded prefix and
/// cached; the instance may be shared across threads.
class QuantumScDecoder {
 public:
  QuantumScDecoder(PolarCode code, QubitEmbedding embedding, DecoderOptions options = {});

  const PolarCode& code() const { return code_; }
  const QubitEmbedding& embedding() const { return embedding_; }
  const DecoderOptions& options() const { return options_; }

  /// Helstrom pair for bit `index` given the decoded prefix u_0..u_{index-1}.
  /// `frozen_bits` (over the frozen set) only matters under kConditionOnFrozen;
  /// empty means the code's stored frozen values.
  std::shared_ptr<const HelstromProjector> decision_projector(
      std::size_t index, std::span<const std::uint8_t> prefix,
      std::span<const std::uint8_t> frozen_bits = {}) const;

  /// Sequential measurement with sampled outcomes and state collapse. `transmitted`
  /// (full u^N) is only used to set the success flag.
  DecodeTrace decode(const StateVector& received, CounterStream& rng,
                     std::span<const std::uint8_t> transmitted = {}) const;

  /// ||Pi_(N),u ... Pi_(1),u |state>||^2 along the path u (frozen positions act as identity).
  double path_probability(std::span<const std::uint8_t> u, const Eigen::VectorXd& state) const;

  /// Tr{Lambda_u rho_u} for the codeword of u.
  double exact_success_prob(std::span<const std::uint8_t> u) const;

  /// 1 - 2^{-K} sum over messages of exact_success_prob, optionally averaged over frozen values.
  double exact_block_error(const BlockErrorOptions& options = {}) const;

  std::size_t cached_projectors() const { return cache_->size(); }

 private:
  std::uint64_t pin_key(std::size_t index, std::span<const std::uint8_t> frozen_bits) const;

  PolarCode code_;
  QubitEmbedding embedding_;
  DecoderOptions options_;
  std::vector<std::uint8_t> info_mask_;
  std::unique_ptr<ProjectorCache> cache_;
};

}  // namespace cqpolar
