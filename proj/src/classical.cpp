#include "cqpolar/classical.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "cqpolar/capacity.hpp"
#include "cqpolar/errors.hpp"
#include "cqpolar/parallel.hpp"
#include "cqpolar/polar_transform.hpp"

namespace cqpolar {
namespace {

double clamp_llr(double v) { return std::clamp(v, -kLlrClamp, kLlrClamp); }

// Codeword of the natural-order (no bit reversal) sub-transform; decisions land in u.
BitBlock sc_recurse(std::span<const double> llr, std::size_t offset,
                    std::span<const std::int8_t> frozen, BitBlock& u) {
  const std::size_t m = llr.size();
  if (m == 1) {
    const std::int8_t fixed = frozen[offset];
    const std::uint8_t bit = fixed >= 0 ? static_cast<std::uint8_t>(fixed) : (llr[0] < 0.0 ? 1 : 0);
    u[offset] = bit;
    return {bit};
  }
  const std::size_t half = m / 2;
  std::vector<double> upper(half);
  for (std::size_t j = 0; j < half; ++j) upper[j] = check_node(llr[j], llr[j + half]);
  const BitBlock first = sc_recurse(upper, offset, frozen, u);
  std::vector<double> lower(half);
  for (std::size_t j = 0; j < half; ++j) lower[j] = variable_node(llr[j], llr[j + half], first[j]);
  const BitBlock second = sc_recurse(lower, offset + half, frozen, u);
  BitBlock out(m);
  for (std::size_t j = 0; j < half; ++j) {
    out[j] = first[j] ^ second[j];
    out[j + half] = second[j];
  }
  return out;
}

constexpr std::array<std::pair<Receiver, std::string_view>, 3> kReceiverNames{{
    {Receiver::kDolinar, "DOLINAR"},
    {Receiver::kHomodyne, "HOMODYNE"},
    {Receiver::kKennedy, "KENNEDY"},
}};

}  // namespace

std::string_view receiver_name(Receiver receiver) {
  for (const auto& [r, name] : kReceiverNames) {
    if (r == receiver) return name;
  }
  return "UNKNOWN";
}

std::optional<Receiver> parse_receiver(std::string_view name) {
  for (const auto& [r, n] : kReceiverNames) {
    if (n == name) return r;
  }
  return std::nullopt;
}

InducedDmc InducedDmc::bsc(double p) {
  if (!(p >= 0.0 && p <= 0.5)) throw ParameterError("BSC crossover must lie in [0, 1/2]");
  InducedDmc dmc;
  dmc.kind = Kind::kBsc;
  dmc.crossover = p;
  dmc.bhattacharyya = 2.0 * std::sqrt(p * (1.0 - p));
  return dmc;
}

InducedDmc InducedDmc::z(double crossover) {
  if (!(crossover >= 0.0 && crossover <= 1.0)) throw ParameterError("Z-channel crossover must lie in [0, 1]");
  InducedDmc dmc;
  dmc.kind = Kind::kZ;
  dmc.crossover = crossover;
  dmc.bhattacharyya = std::sqrt(crossover);
  return dmc;
}

double InducedDmc::likelihood(std::uint8_t y, std::uint8_t x) const {
  if (kind == Kind::kBsc) return y == x ? 1.0 - crossover : crossover;
  if (x == 0) return y ? crossover : 1.0 - crossover;
  return y ? 1.0 : 0.0;
}

std::uint8_t InducedDmc::transmit(std::uint8_t x, CounterStream& rng) const {
  const double r = rng.uniform();
  if (kind == Kind::kBsc) return static_cast<std::uint8_t>(x ^ (r < crossover ? 1 : 0));
  if (x == 1) return 1;
  return r < crossover ? 1 : 0;
}

double InducedDmc::llr(std::uint8_t y) const {
  const double p0 = likelihood(y, 0);
  const double p1 = likelihood(y, 1);
  if (p0 <= 0.0 && p1 <= 0.0) return 0.0;
  if (p1 <= 0.0) return kLlrClamp;
  if (p0 <= 0.0) return -kLlrClamp;
  return clamp_llr(std::log(p0 / p1));
}

InducedDmc induce_dmc(const BpskChannel& channel, Receiver receiver) {
  const double e = channel.clamped() ? std::numeric_limits<double>::infinity()
                                     : channel.effective_energy();
  InducedDmc dmc;
  switch (receiver) {
    case Receiver::kDolinar:
      dmc = InducedDmc::bsc(std::isinf(e) ? 0.0 : dolinar_pe(e));
      break;
    case Receiver::kHomodyne:
      dmc = InducedDmc::bsc(std::isinf(e) ? 0.0 : homodyne_pe(e));
      break;
    case Receiver::kKennedy:
      dmc = InducedDmc::z(std::isinf(e) ? 0.0 : kennedy_crossover(e));
      break;
  }
  dmc.source = receiver;
  return dmc;
}

FidelityProfile bhattacharyya_profile(std::size_t n, double z0) {
  return surrogate_profile(n, z0);
}

double check_node(double a, double b) {
  // sign(a)sign(b)min(|a|,|b|) + log(1+e^{-|a+b|}) - log(1+e^{-|a-b|})
  const double s = ((a < 0.0) != (b < 0.0)) ? -1.0 : 1.0;
  const double m = std::min(std::abs(a), std::abs(b));
  return clamp_llr(s * m + std::log1p(std::exp(-std::abs(a + b))) -
                   std::log1p(std::exp(-std::abs(a - b))));
}

double variable_node(double a, double b, std::uint8_t u) { return clamp_llr(u ? b - a : b + a); }

BitBlock classical_sc_decode(std::span<const double> llr, const PolarCode& code) {
  const std::size_t n = code.n;
  if (llr.size() != n) throw ParameterError("expected " + std::to_string(n) + " channel LLRs");
  // x = (u F^{(x)n}) B_N, so the natural-order word v has v[k] = x[rev(k)].
  const auto perm = bit_reversal(n);
  std::vector<double> natural(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double v = llr[perm[k]];
    if (std::isnan(v)) throw ParameterError("channel LLR is NaN");
    natural[k] = clamp_llr(v);
  }
  std::vector<std::int8_t> frozen(n, -1);
  const auto frozen_set = code.frozen_set();
  for (std::size_t j = 0; j < frozen_set.size(); ++j) {
    frozen[frozen_set[j]] = static_cast<std::int8_t>(code.frozen_values[j]);
  }
  BitBlock u(n, 0);
  sc_recurse(natural, 0, frozen, u);
  return u;
}

ClassicalRun simulate_classical(const InducedDmc& dmc, const PolarCode& code, std::size_t trials,
                                std::uint64_t seed, unsigned threads) {
  if (trials == 0) throw ParameterError("at least one trial is required");
  code.validate();
  const std::size_t k = code.k();
  ClassicalRun run;
  run.records.resize(trials);
  std::vector<std::size_t> bit_errors(trials, 0);
  parallel_for(trials, threads, [&](std::size_t t) {
    CounterStream message_rng(seed, t, kMessageStream);
    CounterStream channel_rng(seed, t, kChannelStream);
    BitBlock info(k);
    for (auto& b : info) b = message_rng.bit();
    const BitBlock x = encode(code.assemble(info));
    std::vector<double> llr(code.n);
    for (std::size_t j = 0; j < code.n; ++j) llr[j] = dmc.llr(dmc.transmit(x[j], channel_rng));
    const BitBlock decoded = code.info_bits(classical_sc_decode(llr, code));
    std::size_t errors = 0;
    for (std::size_t j = 0; j < k; ++j) errors += decoded[j] != info[j];
    bit_errors[t] = errors;
    auto& rec = run.records[t];
    rec.trial = t;
    rec.seed = seed;
    rec.message = to_bitstring(info);
    rec.decoded = to_bitstring(decoded);
    rec.success = errors == 0;
    rec.min_step_prob = std::numeric_limits<double>::quiet_NaN();
  });
  std::size_t block_errors = 0;
  std::size_t total_bit_errors = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    block_errors += run.records[t].success ? 0 : 1;
    total_bit_errors += bit_errors[t];
  }
  run.block_error = binomial_estimate(block_errors, trials);
  run.bit_error = binomial_estimate(total_bit_errors, trials * std::max<std::size_t>(k, 1));
  if (k == 0) run.bit_error = binomial_estimate(0, trials);
  return run;
}

}  // namespace cqpolar
