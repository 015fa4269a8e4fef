#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

namespace cqpolar {

/// Binary entropy in bits with 0 log 0 = 0.
double binary_entropy(double p);

/// Ultimate capacity of the pure-loss channel, g(x) = (1+x)log2(1+x) - x log2(x).
double g_function(double x);

/// Helstrom/Dolinar minimum error for the BPSK pair: [1 - sqrt(1 - e^{-4E})]/2.
double dolinar_pe(double energy);
/// Ideal homodyne: erfc(sqrt(2E))/2.
double homodyne_pe(double energy);
/// Kennedy receiver Z-channel crossover e^{-4E}.
double kennedy_crossover(double energy);
/// Kennedy error probability under equal priors, e^{-4E}/2.
double kennedy_pe(double energy);

double bsc_capacity(double p);

/// Mutual information of a Z-channel where the "noisy" input (prior `prior`)
/// is read as the noiseless input's symbol with probability `crossover`.
double z_channel_information(double crossover, double prior);

struct OptimizedCapacity {
  double capacity;
  double prior;
};

/// Z-channel capacity; with no prior the noisy-input prior is optimized on [1e-9, 1/2].
double z_channel_capacity(double crossover, std::optional<double> prior = std::nullopt);
OptimizedCapacity z_channel_capacity_optimized(double crossover);

/// Holevo capacity of the BPSK pair: H2[(1 + e^{-2E})/2].
double holevo_bpsk(double energy);

/// von Neumann entropy (bits) of p|psi0><psi0| + (1-p)|psi1><psi1| with <psi0|psi1> = gamma.
double holevo_binary_ensemble(double prior, double gamma);

/// On-off keying with direct detection: prior-optimized Z-channel with pulse energy E/p.
OptimizedCapacity ook_dd_capacity_optimized(double energy);
double ook_dd_capacity(double energy);
/// On-off keying Holevo capacity: max_p of the ensemble entropy with overlap e^{-E/(2p)}.
OptimizedCapacity ook_holevo_capacity_optimized(double energy);
double ook_holevo_capacity(double energy);

/// q-ary PPM, direct detection, bits per slot. q must be a power of two >= 2.
double ppm_dd_capacity(unsigned q, double energy);
/// q-ary PPM Holevo capacity, bits per slot.
double ppm_holevo_capacity(unsigned q, double energy);

/// Golden-section maximization of a unimodal objective on [lo, hi].
struct ScalarMaximum {
  double argmax;
  double value;
};
template <typename Objective>
ScalarMaximum golden_section_maximize(Objective&& f, double lo, double hi, double tol = 1e-10);

enum class Scheme {
  kUlt,
  kBpskHolevo,
  kBpskDolinar,
  kBpskHomodyne,
  kKennedy,           // prior-optimized Z-channel
  kKennedyEquiprior,  // Z-channel mutual information at prior 1/2
  kOokDd,
  kOokHolevo,
  kPpmDd,
  kPpmHolevo,
};

std::string_view scheme_name(Scheme scheme);
std::optional<Scheme> parse_scheme(std::string_view name);
std::vector<Scheme> all_schemes();

struct CapacityPoint {
  Scheme scheme;
  double energy;
  double bits_per_use;

  double bits_per_photon() const { return bits_per_use / energy; }
  double nats_per_photon() const;
};

/// PPM order used by the table; 0 selects the best power of two up to 2^16 per energy.
struct TableOptions {
  unsigned ppm_q = 0;
};

double capacity_of(Scheme scheme, double energy, const TableOptions& options = {});

/// One point per (energy, scheme), energy-major. All energies must be positive.
std::vector<CapacityPoint> efficiency_table(std::span<const double> energies,
                                            std::span<const Scheme> schemes,
                                            const TableOptions& options = {});

inline constexpr std::string_view kCapacityCsvHeader =
    "scheme,E,bits_per_use,bits_per_photon,nats_per_photon";

void write_capacity_csv(std::ostream& os, std::span<const CapacityPoint> points);

/// Logarithmic or linear grid of `points` energies between e_min and e_max inclusive.
std::vector<double> energy_grid(double e_min, double e_max, int points, bool logarithmic);

// ---------------------------------------------------------------------------

template <typename Objective>
ScalarMaximum golden_section_maximize(Objective&& f, double lo, double hi, double tol) {
  constexpr double kInvPhi = 0.61803398874989484820;
  double a = lo;
  double b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    }
  }
  ScalarMaximum best{x1, f1};
  if (f2 > best.value) best = {x2, f2};
  // Endpoints matter when the maximum sits on the boundary.
  for (double edge : {lo, hi}) {
    const double v = f(edge);
    if (v > best.value) best = {edge, v};
  }
  return best;
}

}  // namespace cqpolar
