#include "cqpolar/capacity.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "cqpolar/code_file.hpp"
#include "cqpolar/errors.hpp"

namespace cqpolar {
namespace {

constexpr double kPriorLow = 1e-9;
constexpr double kPriorHigh = 0.5;
constexpr double kPriorTol = 1e-10;

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

void require_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ParameterError(std::string(what) + " must lie in [0, 1], got " + std::to_string(p));
  }
}

void require_energy(double e) {
  if (!(e >= 0.0) || std::isnan(e)) {
    throw ParameterError("energy must be non-negative, got " + std::to_string(e));
  }
}

// Entropy of a two-eigenvalue spectrum given det = lambda_+ lambda_-, trace 1.
double entropy_from_det(double det) {
  const double disc = std::sqrt(std::max(0.0, 0.25 - det));
  const double hi = 0.5 + disc;
  const double lo = hi > 0.0 ? det / hi : 0.0;
  return -xlog2x(hi) - xlog2x(lo);
}

constexpr std::array<std::pair<Scheme, std::string_view>, 10> kSchemeNames{{
    {Scheme::kUlt, "ULT"},
    {Scheme::kBpskHolevo, "BPSK_HOLEVO"},
    {Scheme::kBpskDolinar, "BPSK_DOLINAR"},
    {Scheme::kBpskHomodyne, "BPSK_HOMODYNE"},
    {Scheme::kKennedy, "KENNEDY"},
    {Scheme::kKennedyEquiprior, "KENNEDY_EQUIPRIOR"},
    {Scheme::kOokDd, "OOK_DD"},
    {Scheme::kOokHolevo, "OOK_HOLEVO"},
    {Scheme::kPpmDd, "PPM_DD"},
    {Scheme::kPpmHolevo, "PPM_HOLEVO"},
}};

void require_ppm_order(unsigned q) {
  if (q < 2 || (q & (q - 1)) != 0) {
    throw ParameterError("PPM order must be a power of two >= 2, got " + std::to_string(q));
  }
}

}  // namespace

double binary_entropy(double p) {
  require_probability(p, "probability");
  return -xlog2x(p) - xlog2x(1.0 - p);
}

double g_function(double x) {
  if (!(x >= 0.0)) throw ParameterError("g(x) requires x >= 0, got " + std::to_string(x));
  if (x == 0.0) return 0.0;
  return ((1.0 + x) * std::log1p(x) - x * std::log(x)) / std::numbers::ln2;
}

double dolinar_pe(double energy) {
  require_energy(energy);
  const double one_minus_f = -std::expm1(-4.0 * energy);
  // [1 - sqrt(1 - F)]/2 = F / (2 (1 + sqrt(1 - F))), no cancellation at large E.
  const double f = std::exp(-4.0 * energy);
  return f / (2.0 * (1.0 + std::sqrt(one_minus_f)));
}

double homodyne_pe(double energy) {
  require_energy(energy);
  return 0.5 * std::erfc(std::sqrt(2.0 * energy));
}

double kennedy_crossover(double energy) {
  require_energy(energy);
  return std::exp(-4.0 * energy);
}

double kennedy_pe(double energy) { return 0.5 * kennedy_crossover(energy); }

double bsc_capacity(double p) {
  require_probability(p, "crossover");
  return 1.0 - binary_entropy(p);
}

double z_channel_information(double crossover, double prior) {
  require_probability(crossover, "crossover");
  require_probability(prior, "prior");
  return binary_entropy(prior * (1.0 - crossover)) - prior * binary_entropy(crossover);
}

OptimizedCapacity z_channel_capacity_optimized(double crossover) {
  require_probability(crossover, "crossover");
  const auto best = golden_section_maximize(
      [&](double p) { return z_channel_information(crossover, p); }, kPriorLow, kPriorHigh,
      kPriorTol);
  return {std::max(0.0, best.value), best.argmax};
}

double z_channel_capacity(double crossover, std::optional<double> prior) {
  if (prior) return z_channel_information(crossover, *prior);
  return z_channel_capacity_optimized(crossover).capacity;
}

double holevo_bpsk(double energy) {
  require_energy(energy);
  // H2[(1 + g)/2] with det = (1 - g^2)/4.
  return entropy_from_det(-std::expm1(-4.0 * energy) / 4.0);
}

double holevo_binary_ensemble(double prior, double gamma) {
  require_probability(prior, "prior");
  require_probability(gamma, "overlap");
  return entropy_from_det(prior * (1.0 - prior) * (1.0 - gamma * gamma));
}

OptimizedCapacity ook_dd_capacity_optimized(double energy) {
  require_energy(energy);
  if (energy == 0.0) return {0.0, 0.0};
  const auto objective = [&](double p) {
    const double erasure = std::exp(-energy / p);
    return z_channel_information(erasure, p);
  };
  const auto best = golden_section_maximize(objective, kPriorLow, kPriorHigh, kPriorTol);
  return {std::max(0.0, best.value), best.argmax};
}

double ook_dd_capacity(double energy) { return ook_dd_capacity_optimized(energy).capacity; }

OptimizedCapacity ook_holevo_capacity_optimized(double energy) {
  require_energy(energy);
  if (energy == 0.0) return {0.0, 0.0};
  const auto objective = [&](double p) {
    // overlap^2 = e^{-E/p}
    return entropy_from_det(p * (1.0 - p) * -std::expm1(-energy / p));
  };
  const auto best = golden_section_maximize(objective, kPriorLow, kPriorHigh, kPriorTol);
  return {std::max(0.0, best.value), best.argmax};
}

double ook_holevo_capacity(double energy) { return ook_holevo_capacity_optimized(energy).capacity; }

double ppm_dd_capacity(unsigned q, double energy) {
  require_ppm_order(q);
  require_energy(energy);
  const double pulse = q * energy;
  return -std::expm1(-pulse) * std::log2(static_cast<double>(q)) / q;
}

double ppm_holevo_capacity(unsigned q, double energy) {
  require_ppm_order(q);
  require_energy(energy);
  const double qd = static_cast<double>(q);
  const double gamma = std::exp(-qd * energy);
  const double big = (1.0 + (qd - 1.0) * gamma) / qd;
  const double small = -std::expm1(-qd * energy) / qd;
  const double entropy = -xlog2x(big) - (qd - 1.0) * xlog2x(small);
  return std::max(0.0, entropy) / qd;
}

std::string_view scheme_name(Scheme scheme) {
  for (const auto& [s, name] : kSchemeNames) {
    if (s == scheme) return name;
  }
  return "UNKNOWN";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
  for (const auto& [s, n] : kSchemeNames) {
    if (n == name) return s;
  }
  return std::nullopt;
}

std::vector<Scheme> all_schemes() {
  std::vector<Scheme> out;
  for (const auto& entry : kSchemeNames) out.push_back(entry.first);
  return out;
}

double CapacityPoint::nats_per_photon() const {
  return bits_per_use * std::numbers::ln2 / energy;
}

double capacity_of(Scheme scheme, double energy, const TableOptions& options) {
  const auto best_ppm = [&](auto&& cap) {
    if (options.ppm_q != 0) return cap(options.ppm_q, energy);
    double best = 0.0;
    for (unsigned q = 2; q <= (1u << 16); q <<= 1) best = std::max(best, cap(q, energy));
    return best;
  };
  switch (scheme) {
    case Scheme::kUlt:
      return g_function(energy);
    case Scheme::kBpskHolevo:
      return holevo_bpsk(energy);
    case Scheme::kBpskDolinar:
      return bsc_capacity(dolinar_pe(energy));
    case Scheme::kBpskHomodyne:
      return bsc_capacity(homodyne_pe(energy));
    case Scheme::kKennedy:
      return z_channel_capacity(kennedy_crossover(energy));
    case Scheme::kKennedyEquiprior:
      return z_channel_capacity(kennedy_crossover(energy), 0.5);
    case Scheme::kOokDd:
      return ook_dd_capacity(energy);
    case Scheme::kOokHolevo:
      return ook_holevo_capacity(energy);
    case Scheme::kPpmDd:
      return best_ppm(ppm_dd_capacity);
    case Scheme::kPpmHolevo:
      return best_ppm(ppm_holevo_capacity);
  }
  throw ParameterError("unknown scheme");
}

std::vector<CapacityPoint> efficiency_table(std::span<const double> energies,
                                            std::span<const Scheme> schemes,
                                            const TableOptions& options) {
  std::vector<CapacityPoint> out;
  out.reserve(energies.size() * schemes.size());
  for (double e : energies) {
    if (!(e > 0.0)) throw ParameterError("efficiency table energies must be positive");
    for (Scheme s : schemes) out.push_back({s, e, capacity_of(s, e, options)});
  }
  return out;
}

void write_capacity_csv(std::ostream& os, std::span<const CapacityPoint> points) {
  os << kCapacityCsvHeader << '\n';
  for (const auto& p : points) {
    os << scheme_name(p.scheme) << ',' << format_real(p.energy) << ',' << format_real(p.bits_per_use)
       << ',' << format_real(p.bits_per_photon()) << ',' << format_real(p.nats_per_photon())
       << '\n';
  }
}

std::vector<double> energy_grid(double e_min, double e_max, int points, bool logarithmic) {
  if (points < 1) throw ParameterError("grid needs at least one point");
  if (!(e_min > 0.0) || !(e_max >= e_min)) {
    throw ParameterError("grid requires 0 < e_min <= e_max");
  }
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) {
    const double t = points == 1 ? 0.0 : static_cast<double>(k) / (points - 1);
    grid[static_cast<std::size_t>(k)] =
        logarithmic ? e_min * std::pow(e_max / e_min, t) : e_min + (e_max - e_min) * t;
  }
  grid.back() = points == 1 ? e_min : e_max;
  return grid;
}

}  // namespace cqpolar
