#include "cqpolar/channel_model.hpp"

#include <cmath>
#include <string>

#include "cqpolar/errors.hpp"
#include "cqpolar/polar_transform.hpp"

namespace cqpolar {

BpskChannel::BpskChannel(double energy, double eta) : energy_(energy), eta_(eta) {
  if (!(energy >= 0.0) || !std::isfinite(energy)) {
    throw ParameterError("energy must be a finite non-negative photon number, got " +
                         std::to_string(energy));
  }
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw ParameterError("transmissivity must lie in (0, 1], got " + std::to_string(eta));
  }
  clamped_ = effective_energy() > kMaxEffectiveEnergy;
}

double overlap(const BpskChannel& channel) {
  if (channel.clamped()) return 0.0;
  return std::exp(-2.0 * channel.effective_energy());
}

double fidelity(const BpskChannel& channel) {
  const double g = overlap(channel);
  return g * g;
}

QubitEmbedding QubitEmbedding::from_overlap(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw ParameterError("overlap must lie in [0, 1], got " + std::to_string(gamma));
  }
  return {gamma, std::sqrt((1.0 + gamma) / 2.0), std::sqrt((1.0 - gamma) / 2.0)};
}

QubitEmbedding QubitEmbedding::from_channel(const BpskChannel& channel) {
  if (channel.clamped()) return from_overlap(0.0);
  // 1 - gamma via expm1 keeps s accurate when E is tiny.
  const double eff = channel.effective_energy();
  const double one_minus = -std::expm1(-2.0 * eff);
  const double gamma = std::exp(-2.0 * eff);
  return {gamma, std::sqrt((1.0 + gamma) / 2.0), std::sqrt(one_minus / 2.0)};
}

std::array<double, 2> embed_symbol(std::uint8_t bit, const QubitEmbedding& embedding) {
  return {embedding.c, bit ? -embedding.s : embedding.s};
}

StateVector codeword_state(std::span<const std::uint8_t> x, const QubitEmbedding& embedding) {
  if (!is_power_of_two(x.size())) {
    throw ParameterError("codeword length must be a power of two, got " + std::to_string(x.size()));
  }
  Eigen::VectorXd amps(1);
  amps(0) = 1.0;
  for (std::uint8_t bit : x) {
    const auto sym = embed_symbol(bit, embedding);
    Eigen::VectorXd next(amps.size() * 2);
    for (Eigen::Index j = 0; j < amps.size(); ++j) {
      next(2 * j) = amps(j) * sym[0];
      next(2 * j + 1) = amps(j) * sym[1];
    }
    amps = std::move(next);
  }
  return {std::move(amps), static_cast<int>(x.size())};
}

int hamming_distance(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y) {
  if (x.size() != y.size()) throw ParameterError("hamming_distance: length mismatch");
  int d = 0;
  for (std::size_t i = 0; i < x.size(); ++i) d += (x[i] != y[i]);
  return d;
}

}  // namespace cqpolar
