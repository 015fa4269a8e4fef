#include "cqpolar/quantum_decoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cqpolar/errors.hpp"
#include "cqpolar/parallel.hpp"
#include "cqpolar/polar_transform.hpp"

namespace cqpolar {
namespace {

constexpr double kTieScale = 1e-10;
// A sampled branch this unlikely is rounding noise, not physics.
constexpr double kAnomalousProbability = 1e-15;

std::uint64_t pack_bits(std::span<const std::uint8_t> bits) {
  std::uint64_t v = 0;
  for (auto b : bits) v = (v << 1) | (b & 1u);
  return v;
}

}  // namespace

// --- HelstromProjector -------------------------------------------------------

HelstromProjector::HelstromProjector(Eigen::MatrixXd basis, bool spans_zero_outcome,
                                     Eigen::Index dimension)
    : basis_(std::move(basis)), spans_zero_(spans_zero_outcome), dimension_(dimension) {}

Eigen::Index HelstromProjector::zero_rank() const {
  return spans_zero_ ? basis_.cols() : dimension_ - basis_.cols();
}

Eigen::VectorXd HelstromProjector::apply(std::uint8_t outcome, const Eigen::VectorXd& v) const {
  const bool stored = (outcome == 0) == spans_zero_;
  if (basis_.cols() == 0) return stored ? Eigen::VectorXd::Zero(v.size()) : v;
  Eigen::VectorXd onto = basis_ * (basis_.transpose() * v);
  return stored ? onto : Eigen::VectorXd(v - onto);
}

double HelstromProjector::zero_probability(const Eigen::VectorXd& v) const {
  return apply(0, v).squaredNorm();
}

Eigen::MatrixXd HelstromProjector::matrix(std::uint8_t outcome) const {
  const Eigen::MatrixXd stored = basis_ * basis_.transpose();
  if ((outcome == 0) == spans_zero_) return stored;
  return Eigen::MatrixXd::Identity(dimension_, dimension_) - stored;
}

HelstromProjector helstrom(const DensityMatrix& rho0, const DensityMatrix& rho1) {
  if (rho0.dimension() != rho1.dimension()) throw ParameterError("helstrom: dimension mismatch");
  const Eigen::MatrixXd diff = rho0.entries - rho1.entries;
  const Eigen::Index dim = diff.rows();
  const double scale = diff.size() ? diff.cwiseAbs().maxCoeff() : 0.0;
  if (scale == 0.0) return HelstromProjector(Eigen::MatrixXd(dim, 0), false, dim);

  const SymmetricEigen eig = symmetric_eigen(diff);
  const double tol = kTieScale * scale;
  Eigen::Index split = 0;  // eigenvalues ascending: [0, split) negative, [split, dim) nonnegative
  while (split < dim && eig.values(split) < -tol) ++split;
  const Eigen::Index zero_rank = dim - split;
  if (zero_rank <= split) {
    return HelstromProjector(eig.vectors.rightCols(zero_rank), true, dim);
  }
  return HelstromProjector(eig.vectors.leftCols(split), false, dim);
}

// --- ProjectorCache ----------------------------------------------------------

std::size_t ProjectorCache::KeyHash::operator()(const Key& k) const {
  std::uint64_t h = k.prefix * 0x9E3779B97F4A7C15ull;
  h ^= (k.pins + 0x632BE59BD9B4E019ull) + (h << 6) + (h >> 2);
  h ^= (static_cast<std::uint64_t>(k.index) + 0x85EBCA77C2B2AE63ull) + (h << 6) + (h >> 2);
  return static_cast<std::size_t>(h);
}

std::shared_ptr<const HelstromProjector> ProjectorCache::find(const Key& key) {
  std::lock_guard lock(mutex_);
  auto it = index_.find(key);
  if (it == index_.end()) return nullptr;
  order_.splice(order_.begin(), order_, it->second);
  return it->second->second;
}

void ProjectorCache::insert(const Key& key, std::shared_ptr<const HelstromProjector> value) {
  std::lock_guard lock(mutex_);
  if (capacity_ == 0) return;
  if (auto it = index_.find(key); it != index_.end()) {
    order_.splice(order_.begin(), order_, it->second);
    return;
  }
  order_.emplace_front(key, std::move(value));
  index_.emplace(key, order_.begin());
  while (order_.size() > capacity_) {
    index_.erase(order_.back().first);
    order_.pop_back();
  }
}

std::size_t ProjectorCache::size() const {
  std::lock_guard lock(mutex_);
  return order_.size();
}

// --- DecodeTrace ---------------------------------------------------------------

double DecodeTrace::min_step_prob() const {
  if (step_probabilities.empty()) return 1.0;
  return *std::min_element(step_probabilities.begin(), step_probabilities.end());
}

// --- QuantumScDecoder ----------------------------------------------------------

QuantumScDecoder::QuantumScDecoder(PolarCode code, QubitEmbedding embedding, DecoderOptions options)
    : code_(std::move(code)),
      embedding_(embedding),
      options_(options),
      cache_(std::make_unique<ProjectorCache>(options.cache_capacity)) {
  code_.validate();
  if (options_.exact_limit > kMaxExactLimit) {
    throw GuardViolation("exact limit " + std::to_string(options_.exact_limit) +
                         " exceeds the hard maximum " + std::to_string(kMaxExactLimit));
  }
  if (code_.n > options_.exact_limit) {
    throw GuardViolation("quantum decoding limited to N <= " + std::to_string(options_.exact_limit) +
                         ", code has N = " + std::to_string(code_.n));
  }
  info_mask_ = code_.info_mask();
}

std::uint64_t QuantumScDecoder::pin_key(std::size_t index,
                                        std::span<const std::uint8_t> frozen_bits) const {
  if (options_.frozen_handling == FrozenHandling::kAverageAll) return 0;
  std::uint64_t key = 0;
  std::size_t f = 0;
  for (std::size_t i = 0; i < code_.n; ++i) {
    if (info_mask_[i]) continue;
    if (i > index) key = (key << 1) | (frozen_bits[f] & 1u);
    ++f;
  }
  return key;
}

std::shared_ptr<const HelstromProjector> QuantumScDecoder::decision_projector(
    std::size_t index, std::span<const std::uint8_t> prefix,
    std::span<const std::uint8_t> frozen_bits) const {
  if (index >= code_.n) throw ParameterError("decision index out of range");
  if (prefix.size() != index) throw ParameterError("decision prefix must have length equal to the index");
  if (frozen_bits.empty()) frozen_bits = code_.frozen_values;
  if (frozen_bits.size() != code_.n - code_.k()) throw ParameterError("frozen assignment has the wrong length");

  const ProjectorCache::Key key{index, pack_bits(prefix), pin_key(index, frozen_bits)};
  if (auto hit = cache_->find(key)) return hit;

  std::vector<std::int8_t> pins;
  if (options_.frozen_handling == FrozenHandling::kConditionOnFrozen) {
    pins.assign(code_.n, -1);
    std::size_t f = 0;
    for (std::size_t i = 0; i < code_.n; ++i) {
      if (!info_mask_[i]) pins[i] = static_cast<std::int8_t>(frozen_bits[f++]);
    }
  }
  BitBlock p0(prefix.begin(), prefix.end());
  p0.push_back(0);
  BitBlock p1(prefix.begin(), prefix.end());
  p1.push_back(1);
  const auto rho0 = exact_averaged_state(p0, code_.n, embedding_, pins, options_.exact_limit);
  const auto rho1 = exact_averaged_state(p1, code_.n, embedding_, pins, options_.exact_limit);
  auto projector = std::make_shared<const HelstromProjector>(helstrom(rho0, rho1));
  cache_->insert(key, projector);
  return projector;
}

DecodeTrace QuantumScDecoder::decode(const StateVector& received, CounterStream& rng,
                                     std::span<const std::uint8_t> transmitted) const {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << code_.n);
  if (received.amplitudes.size() != dim) throw ParameterError("received state has the wrong dimension");
  if (!transmitted.empty() && transmitted.size() != code_.n) {
    throw ParameterError("transmitted block has the wrong length");
  }

  DecodeTrace trace;
  trace.decoded.assign(code_.n, 0);
  Eigen::VectorXd phi = received.amplitudes.normalized();
  double branch_norm = 1.0;
  std::size_t f = 0;
  for (std::size_t i = 0; i < code_.n; ++i) {
    if (!info_mask_[i]) {
      trace.decoded[i] = code_.frozen_values[f++];
      continue;
    }
    const auto projector =
        decision_projector(i, std::span(trace.decoded).first(i), code_.frozen_values);
    Eigen::VectorXd branch0 = projector->apply(0, phi);
    Eigen::VectorXd branch1 = phi - branch0;
    const double p0 = branch0.squaredNorm();
    const double p1 = branch1.squaredNorm();
    const std::uint8_t outcome = rng.uniform() * (p0 + p1) < p0 ? 0 : 1;
    const double prob = outcome ? p1 : p0;
    trace.zero_probabilities.push_back(p0);
    trace.one_probabilities.push_back(p1);
    trace.step_probabilities.push_back(prob);
    trace.decoded[i] = outcome;
    if (!(prob > kAnomalousProbability)) {
      trace.anomaly = true;
      trace.post_norms.push_back(0.0);
      return trace;
    }
    phi = (outcome ? branch1 : branch0) / std::sqrt(prob);
    branch_norm *= prob;
    trace.post_norms.push_back(branch_norm);
  }
  if (!transmitted.empty()) {
    trace.success = true;
    for (auto i : code_.info_set) trace.success = trace.success && trace.decoded[i] == transmitted[i];
  }
  return trace;
}

double QuantumScDecoder::path_probability(std::span<const std::uint8_t> u,
                                          const Eigen::VectorXd& state) const {
  if (u.size() != code_.n) throw ParameterError("path must have N bits");
  const BitBlock frozen = [&] {
    BitBlock out;
    for (std::size_t i = 0; i < code_.n; ++i) {
      if (!info_mask_[i]) out.push_back(u[i]);
    }
    return out;
  }();
  Eigen::VectorXd phi = state;
  for (std::size_t i = 0; i < code_.n; ++i) {
    if (!info_mask_[i]) continue;
    phi = decision_projector(i, u.first(i), frozen)->apply(u[i], phi);
  }
  return phi.squaredNorm();
}

double QuantumScDecoder::exact_success_prob(std::span<const std::uint8_t> u) const {
  return path_probability(u, codeword_state(encode(u), embedding_).amplitudes);
}

double QuantumScDecoder::exact_block_error(const BlockErrorOptions& options) const {
  const std::size_t k = code_.k();
  const std::size_t frozen_count = code_.n - k;
  if (k > options_.message_limit) {
    throw GuardViolation("exact block error enumerates 2^K messages; K = " + std::to_string(k) +
                         " exceeds the limit " + std::to_string(options_.message_limit));
  }
  std::vector<BitBlock> assignments;
  switch (options.averaging) {
    case FrozenAveraging::kStored:
      assignments.push_back(code_.frozen_values);
      break;
    case FrozenAveraging::kAll:
      if (frozen_count > 20) throw GuardViolation("too many frozen bits to enumerate every assignment");
      for (std::uint64_t a = 0; a < (std::uint64_t{1} << frozen_count); ++a) {
        BitBlock bits(frozen_count);
        for (std::size_t j = 0; j < frozen_count; ++j) bits[j] = (a >> (frozen_count - 1 - j)) & 1u;
        assignments.push_back(std::move(bits));
      }
      break;
    case FrozenAveraging::kSampled:
      for (std::size_t s = 0; s < options.samples; ++s) {
        CounterStream stream(options.seed, s, kFrozenStream);
        BitBlock bits(frozen_count);
        for (auto& b : bits) b = stream.bit();
        assignments.push_back(std::move(bits));
      }
      break;
  }
  if (assignments.empty()) throw ParameterError("no frozen assignments to average over");

  const std::size_t messages = std::size_t{1} << k;
  const std::size_t paths = assignments.size() * messages;
  std::vector<double> success(paths, 0.0);
  parallel_for(paths, options.threads, [&](std::size_t t) {
    const auto& frozen = assignments[t / messages];
    const std::size_t m = t % messages;
    BitBlock info(k);
    for (std::size_t j = 0; j < k; ++j) info[j] = (m >> (k - 1 - j)) & 1u;
    success[t] = exact_success_prob(code_.assemble(info, frozen));
  });
  double total = 0.0;
  for (double s : success) total += s;
  return std::clamp(1.0 - total / static_cast<double>(paths), 0.0, 1.0);
}

}  // namespace cqpolar
