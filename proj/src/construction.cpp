#include "cqpolar/construction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/SVD>

#include "cqpolar/errors.hpp"
#include "cqpolar/parallel.hpp"
#include "cqpolar/rng.hpp"

namespace cqpolar {
namespace {

void check_exact_size(std::size_t n, std::size_t exact_limit) {
  checked_log2(n);
  if (exact_limit > kMaxExactLimit) {
    throw GuardViolation("exact limit " + std::to_string(exact_limit) + " exceeds the hard maximum " +
                         std::to_string(kMaxExactLimit));
  }
  if (n > exact_limit) {
    throw GuardViolation("exact density-matrix computation limited to N <= " +
                         std::to_string(exact_limit) + ", requested N = " + std::to_string(n));
  }
}

BitBlock prefix_bits(std::uint64_t packed, std::size_t length) {
  BitBlock bits(length);
  for (std::size_t j = 0; j < length; ++j) bits[j] = (packed >> (length - 1 - j)) & 1u;
  return bits;
}

// Averaged states for prefix+0 and prefix+1.
std::pair<DensityMatrix, DensityMatrix> sibling_states(const BitBlock& prefix, std::size_t n,
                                                       const QubitEmbedding& embedding,
                                                       std::size_t exact_limit) {
  BitBlock p0 = prefix;
  p0.push_back(0);
  BitBlock p1 = prefix;
  p1.push_back(1);
  return {exact_averaged_state(p0, n, embedding, {}, exact_limit),
          exact_averaged_state(p1, n, embedding, {}, exact_limit)};
}

// Encoded codewords of every completion of `prefix`.
std::vector<BitBlock> completions(const BitBlock& prefix, std::size_t n) {
  const std::size_t free_bits = n - prefix.size();
  std::vector<BitBlock> out;
  out.reserve(std::size_t{1} << free_bits);
  BitBlock u(n, 0);
  std::copy(prefix.begin(), prefix.end(), u.begin());
  for (std::uint64_t t = 0; t < (std::uint64_t{1} << free_bits); ++t) {
    for (std::size_t b = 0; b < free_bits; ++b) u[prefix.size() + b] = (t >> (free_bits - 1 - b)) & 1u;
    out.push_back(encode(u));
  }
  return out;
}

// With rho = A A^T and sigma = B B^T, ||sqrt(rho) sqrt(sigma)||_1 = ||A^T B||_1. The
// columns are codeword states over sqrt(m), so (A^T B)_{jk} = gamma^{d_H(x_j, y_k)} / m.
double sibling_root_fidelity(const BitBlock& prefix, std::size_t n, double gamma) {
  BitBlock p0 = prefix;
  p0.push_back(0);
  BitBlock p1 = prefix;
  p1.push_back(1);
  const auto xs = completions(p0, n);
  const auto ys = completions(p1, n);
  std::vector<double> powers(n + 1, 1.0);
  for (std::size_t d = 1; d <= n; ++d) powers[d] = powers[d - 1] * gamma;
  const auto m = static_cast<Eigen::Index>(xs.size());
  Eigen::MatrixXd cross(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index k = 0; k < m; ++k) {
      cross(j, k) = powers[static_cast<std::size_t>(hamming_distance(xs[j], ys[k]))];
    }
  }
  cross /= static_cast<double>(m);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(cross);
  return svd.singularValues().sum();
}

}  // namespace

std::string_view profile_mode_name(ProfileMode mode) {
  return mode == ProfileMode::kExact ? "EXACT" : "SURROGATE_UPPER";
}

std::optional<ProfileMode> parse_profile_mode(std::string_view name) {
  if (name == "EXACT") return ProfileMode::kExact;
  if (name == "SURROGATE_UPPER") return ProfileMode::kSurrogateUpper;
  return std::nullopt;
}

FidelityProfile surrogate_profile(std::size_t n, double sqrt_f0) {
  checked_log2(n);
  if (!(sqrt_f0 >= 0.0 && sqrt_f0 <= 1.0)) {
    throw ParameterError("root fidelity must lie in [0, 1], got " + std::to_string(sqrt_f0));
  }
  std::vector<double> level{sqrt_f0};
  while (level.size() < n) {
    std::vector<double> next(level.size() * 2);
    for (std::size_t j = 0; j < level.size(); ++j) {
      const double f = level[j];
      next[2 * j] = std::min(1.0, 2.0 * f - f * f);
      next[2 * j + 1] = f * f;
    }
    level = std::move(next);
  }
  return {n, std::move(level), ProfileMode::kSurrogateUpper};
}

DensityMatrix exact_averaged_state(std::span<const std::uint8_t> prefix, std::size_t n,
                                   const QubitEmbedding& embedding, SuffixPins pins,
                                   std::size_t exact_limit) {
  check_exact_size(n, exact_limit);
  if (prefix.size() > n) throw ParameterError("prefix longer than block length");
  if (!pins.empty() && pins.size() != n) throw ParameterError("pins must cover all N positions");

  std::vector<std::size_t> free_positions;
  BitBlock u(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    if (j < prefix.size()) {
      if (prefix[j] > 1) throw ParameterError("prefix bits must be 0 or 1");
      u[j] = prefix[j];
    } else if (pins.empty() || pins[j] < 0) {
      free_positions.push_back(j);
    } else {
      u[j] = static_cast<std::uint8_t>(pins[j] != 0);
    }
  }

  const std::size_t terms = std::size_t{1} << free_positions.size();
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXd amplitudes(dim, static_cast<Eigen::Index>(terms));
  const double scale = 1.0 / std::sqrt(static_cast<double>(terms));
  for (std::size_t t = 0; t < terms; ++t) {
    for (std::size_t b = 0; b < free_positions.size(); ++b) {
      u[free_positions[b]] = (t >> (free_positions.size() - 1 - b)) & 1u;
    }
    amplitudes.col(static_cast<Eigen::Index>(t)) = codeword_state(encode(u), embedding).amplitudes * scale;
  }
  DensityMatrix rho{amplitudes * amplitudes.transpose()};
  // Exact symmetry for the eigensolver.
  rho.entries = 0.5 * (rho.entries + rho.entries.transpose()).eval();
  return rho;
}

double exact_split_root_fidelity(std::size_t n, std::size_t index, const QubitEmbedding& embedding,
                                 std::size_t exact_limit) {
  check_exact_size(n, exact_limit);
  if (index >= n) throw ParameterError("split-channel index out of range");
  const std::uint64_t prefixes = std::uint64_t{1} << index;
  double sum = 0.0;
  for (std::uint64_t p = 0; p < prefixes; ++p) {
    sum += sibling_root_fidelity(prefix_bits(p, index), n, embedding.gamma);
  }
  return std::min(1.0, sum / static_cast<double>(prefixes));
}

double exact_split_fidelity(std::size_t n, std::size_t index, const QubitEmbedding& embedding,
                            std::size_t exact_limit) {
  const double r = exact_split_root_fidelity(n, index, embedding, exact_limit);
  return r * r;
}

FidelityProfile exact_profile(std::size_t n, const QubitEmbedding& embedding,
                              std::size_t exact_limit, unsigned threads) {
  check_exact_size(n, exact_limit);
  // Task t covers (index, prefix) with index = floor(log2(t + 1)), prefix = t + 1 - 2^index.
  const std::size_t tasks = n == 0 ? 0 : (std::size_t{1} << n) - 1;
  std::vector<double> per_task(tasks, 0.0);
  parallel_for(tasks, threads, [&](std::size_t t) {
    std::size_t index = 0;
    while ((std::size_t{2} << index) <= t + 1) ++index;
    const std::uint64_t prefix = t + 1 - (std::size_t{1} << index);
    per_task[t] = sibling_root_fidelity(prefix_bits(prefix, index), n, embedding.gamma);
  });
  FidelityProfile profile{n, std::vector<double>(n, 0.0), ProfileMode::kExact};
  for (std::size_t index = 0; index < n; ++index) {
    const std::size_t first = (std::size_t{1} << index) - 1;
    const std::size_t count = std::size_t{1} << index;
    double sum = 0.0;
    for (std::size_t j = 0; j < count; ++j) sum += per_task[first + j];
    profile.sqrt_f[index] = std::min(1.0, sum / static_cast<double>(count));
  }
  return profile;
}

double split_holevo_information(std::size_t n, std::size_t index, const QubitEmbedding& embedding,
                                std::size_t exact_limit) {
  check_exact_size(n, exact_limit);
  if (index >= n) throw ParameterError("split-channel index out of range");
  const std::uint64_t prefixes = std::uint64_t{1} << index;
  double sum = 0.0;
  for (std::uint64_t p = 0; p < prefixes; ++p) {
    auto [rho0, rho1] = sibling_states(prefix_bits(p, index), n, embedding, exact_limit);
    const DensityMatrix mixture{0.5 * (rho0.entries + rho1.entries)};
    sum += von_neumann_entropy(mixture) - 0.5 * von_neumann_entropy(rho0) -
           0.5 * von_neumann_entropy(rho1);
  }
  return sum / static_cast<double>(prefixes);
}

std::vector<std::uint8_t> PolarCode::info_mask() const {
  std::vector<std::uint8_t> mask(n, 0);
  for (auto i : info_set) mask[i] = 1;
  return mask;
}

std::vector<std::size_t> PolarCode::frozen_set() const {
  const auto mask = info_mask();
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (!mask[i]) out.push_back(i);
  }
  return out;
}

BitBlock PolarCode::assemble(std::span<const std::uint8_t> info_bits) const {
  return assemble(info_bits, frozen_values);
}

BitBlock PolarCode::assemble(std::span<const std::uint8_t> info_bits,
                             std::span<const std::uint8_t> frozen_bits) const {
  if (info_bits.size() != k()) throw ParameterError("expected " + std::to_string(k()) + " information bits");
  if (frozen_bits.size() != n - k()) throw ParameterError("frozen assignment has the wrong length");
  const auto mask = info_mask();
  BitBlock u(n, 0);
  std::size_t a = 0;
  std::size_t f = 0;
  for (std::size_t i = 0; i < n; ++i) u[i] = mask[i] ? info_bits[a++] : frozen_bits[f++];
  return u;
}

BitBlock PolarCode::info_bits(std::span<const std::uint8_t> u) const {
  BitBlock out;
  out.reserve(k());
  for (auto i : info_set) out.push_back(u[i]);
  return out;
}

void PolarCode::validate() const {
  checked_log2(n);
  if (info_set.size() > n) throw ParameterError("information set larger than N");
  for (std::size_t j = 0; j < info_set.size(); ++j) {
    if (info_set[j] >= n) throw ParameterError("information index out of range");
    if (j > 0 && info_set[j] <= info_set[j - 1]) {
      throw ParameterError("information set must be strictly increasing");
    }
  }
  if (frozen_values.size() != n - info_set.size()) {
    throw ParameterError("frozen bitstring must have N - K = " + std::to_string(n - info_set.size()) +
                         " bits, got " + std::to_string(frozen_values.size()));
  }
  for (auto b : frozen_values) {
    if (b > 1) throw ParameterError("frozen values must be bits");
  }
  if (profile.n != n || profile.sqrt_f.size() != n) {
    throw ParameterError("fidelity profile length does not match N");
  }
  for (double v : profile.sqrt_f) {
    if (!(v >= 0.0 && v <= 1.0)) throw ParameterError("root fidelities must lie in [0, 1]");
  }
}

PolarCode select_information_set(const FidelityProfile& profile, const SelectionRule& rule,
                                 const FrozenChoice& frozen) {
  const std::size_t n = profile.sqrt_f.size();
  checked_log2(n);
  PolarCode code;
  code.n = n;
  code.profile = profile;

  if (rule.kind == SelectionRule::Kind::kThreshold) {
    if (!(rule.beta > 0.0 && rule.beta < 0.5)) {
      throw ParameterError("threshold exponent beta must lie in (0, 1/2)");
    }
    const double threshold = std::exp2(-std::pow(static_cast<double>(n), rule.beta));
    for (std::size_t i = 0; i < n; ++i) {
      if (profile.sqrt_f[i] < threshold) code.info_set.push_back(i);
    }
  } else {
    if (rule.k > n) throw ParameterError("K = " + std::to_string(rule.k) + " exceeds N = " + std::to_string(n));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return profile.sqrt_f[a] < profile.sqrt_f[b];
    });
    // Values within kTieTolerance (relative) form one tie group, ordered by index.
    for (std::size_t lo = 0; lo < n;) {
      std::size_t hi = lo + 1;
      while (hi < n && profile.sqrt_f[order[hi]] - profile.sqrt_f[order[hi - 1]] <=
                           kTieTolerance * std::max(profile.sqrt_f[order[hi]], kTieTolerance)) {
        ++hi;
      }
      std::sort(order.begin() + static_cast<std::ptrdiff_t>(lo), order.begin() + static_cast<std::ptrdiff_t>(hi));
      lo = hi;
    }
    code.info_set.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(rule.k));
    std::sort(code.info_set.begin(), code.info_set.end());
  }

  code.frozen_values.assign(n - code.info_set.size(), 0);
  if (frozen.random) {
    CounterStream stream(frozen.seed, 0, kFrozenStream);
    for (auto& b : code.frozen_values) b = stream.bit();
  }
  return code;
}

ErrorBound fidelity_error_bound(const PolarCode& code) {
  double sum = 0.0;
  for (auto i : code.info_set) sum += 0.5 * code.profile.sqrt_f.at(i);
  const double raw = 2.0 * std::sqrt(sum);
  return {raw, std::min(1.0, raw)};
}

double polarized_fraction(const FidelityProfile& profile, double beta) {
  if (!(beta > 0.0 && beta < 0.5)) throw ParameterError("beta must lie in (0, 1/2)");
  const std::size_t n = profile.sqrt_f.size();
  if (n == 0) return 0.0;
  const double threshold = std::exp2(-std::pow(static_cast<double>(n), beta));
  const auto good = std::count_if(profile.sqrt_f.begin(), profile.sqrt_f.end(),
                                  [&](double v) { return v < threshold; });
  return static_cast<double>(good) / static_cast<double>(n);
}

}  // namespace cqpolar
