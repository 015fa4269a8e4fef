#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace cqpolar {

/// Effective energies above this clamp the BPSK overlap to exactly zero.
inline constexpr double kMaxEffectiveEnergy = 50.0;

/// Binary phase-shift keyed coherent-state channel {|+sqrt(E)>, |-sqrt(E)>}.
///
/// Transmissivity is folded into an effective (received) energy eta*E at
/// construction; every downstream quantity depends only on that product.
class BpskChannel {
 public:
  explicit BpskChannel(double energy, double eta = 1.0);

  double energy() const { return energy_; }
  double eta() const { return eta_; }
  double effective_energy() const { return energy_ * eta_; }

  /// True when eta*E exceeded kMaxEffectiveEnergy and the overlap was clamped to 0.
  bool clamped() const { return clamped_; }

 private:
  double energy_;
  double eta_;
  bool clamped_;
};

/// <psi0|psi1> = exp(-2 eta E), in (0,1].
double overlap(const BpskChannel& channel);

/// F(W) = overlap^2 = exp(-4 eta E).
double fidelity(const BpskChannel& channel);

/// Real two-dimensional span of the BPSK pair: |psi_x> = (c, (-1)^x s).
struct QubitEmbedding {
  double gamma;
  double c;
  double s;

  static QubitEmbedding from_overlap(double gamma);
  static QubitEmbedding from_channel(const BpskChannel& channel);
};

std::array<double, 2> embed_symbol(std::uint8_t bit, const QubitEmbedding& embedding);

/// Pure product state of N symbols in the 2^N-dimensional real embedding.
struct StateVector {
  Eigen::VectorXd amplitudes;
  int num_symbols = 0;

  std::size_t dimension() const { return static_cast<std::size_t>(amplitudes.size()); }
};

/// Kronecker product of per-symbol vectors; symbol 0 is the most significant tensor factor.
StateVector codeword_state(std::span<const std::uint8_t> x, const QubitEmbedding& embedding);

int hamming_distance(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y);

}  // namespace cqpolar
