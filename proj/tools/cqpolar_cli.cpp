// Command-line front end: capacity | construct | simulate | compare.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "cqpolar/code_file.hpp"
#include "cqpolar/errors.hpp"
#include "cqpolar/harness.hpp"

namespace {

using namespace cqpolar;

enum ExitCode { kOk = 0, kParameter = 1, kGuard = 2, kAnomaly = 3 };

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::uint64_t seed = 1;
  std::string out;
  unsigned threads = 1;
  bool emit_params = false;
};

void add_common(CLI::App* app, CommonOptions& common) {
  app->add_option("--seed", common.seed, "Global seed (u64)");
  app->add_option("--out", common.out, "Output path (default: stdout)");
  app->add_option("--threads", common.threads, "Worker threads")->check(CLI::PositiveNumber);
  app->add_flag("--emit-params", common.emit_params, "Echo resolved parameters to stderr");
}

// Writes through a callback to --out or stdout.
void emit(const std::string& path, const std::function<void(std::ostream&)>& body) {
  if (path.empty() || path == "-") {
    body(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot open output path '" + path + "' for writing");
  body(out);
  out.flush();
  if (!out) throw IoError("write failed for output path '" + path + "'");
}

void echo_params(const CommonOptions& common, const std::string& command,
                 const std::vector<std::pair<std::string, std::string>>& params) {
  if (!common.emit_params) return;
  std::cerr << "command=" << command << '\n' << "seed=" << common.seed << '\n'
            << "threads=" << common.threads << '\n';
  for (const auto& [k, v] : params) std::cerr << k << '=' << v << '\n';
}

template <typename Enum>
Enum lookup(const std::map<std::string, Enum>& table, const std::string& key, const char* what) {
  auto it = table.find(key);
  if (it == table.end()) throw ParameterError(std::string("unknown ") + what + " '" + key + "'");
  return it->second;
}

std::vector<Scheme> parse_schemes(const std::string& list) {
  if (list.empty() || list == "ALL") return all_schemes();
  std::vector<Scheme> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto s = parse_scheme(item);
    if (!s) throw ParameterError("unknown scheme '" + item + "'");
    out.push_back(*s);
  }
  return out;
}

void warn_if_clamped(double energy, double eta) {
  if (BpskChannel(energy, eta).clamped()) {
    std::cerr << "warning: effective energy " << energy * eta << " exceeds " << kMaxEffectiveEnergy
              << "; BPSK overlap clamped to 0\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classical-quantum polar codes on the BPSK pure-loss optical channel"};
  app.require_subcommand(1);

  // capacity
  CommonOptions cap_common;
  CapacityConfig cap;
  std::string cap_schemes;
  bool cap_linear = false;
  auto* cap_cmd = app.add_subcommand("capacity", "Capacity and photon-efficiency table (CSV)");
  add_common(cap_cmd, cap_common);
  cap_cmd->add_option("--e-min", cap.e_min, "Smallest mean photon number");
  cap_cmd->add_option("--e-max", cap.e_max, "Largest mean photon number");
  cap_cmd->add_option("--points", cap.points, "Number of grid points");
  cap_cmd->add_flag("--log", cap.logarithmic, "Logarithmic grid (default)");
  cap_cmd->add_flag("--linear", cap_linear, "Linear grid");
  cap_cmd->add_option("--schemes", cap_schemes, "Comma-separated scheme names (default: all)");
  cap_cmd->add_option("--ppm-q", cap.table.ppm_q, "PPM order; 0 picks the best power of two per E");

  // construct
  CommonOptions con_common;
  ConstructConfig con;
  std::string con_rule = "target";
  std::string con_mode = "exact";
  std::string con_frozen = "zero";
  std::size_t con_k = 1;
  double con_beta = 0.45;
  auto* con_cmd = app.add_subcommand("construct", "Build a code file");
  add_common(con_cmd, con_common);
  con_cmd->add_option("--n", con.n, "Block length (power of two)")->required();
  con_cmd->add_option("--energy", con.energy, "Mean photon number per pulse")->required();
  con_cmd->add_option("--eta", con.eta, "Transmissivity in (0, 1]");
  con_cmd->add_option("--rule", con_rule, "target | threshold");
  con_cmd->add_option("--k", con_k, "Information bits for the target-rate rule");
  con_cmd->add_option("--beta", con_beta, "Exponent for the threshold rule, in (0, 1/2)");
  con_cmd->add_option("--mode", con_mode, "exact | surrogate");
  con_cmd->add_option("--frozen", con_frozen, "zero | random (seeded by --seed)");
  con_cmd->add_option("--n-exact", con.exact_limit, "Exact-construction size limit (<= 10)");

  // simulate
  CommonOptions sim_common;
  SimulateConfig sim;
  std::string sim_code_path;
  std::string sim_arm = "QUANTUM_EXACT";
  std::string sim_receiver = "DOLINAR";
  std::string sim_averaging = "stored";
  std::string sim_handling = "average";
  std::string sim_trial_log;
  double sim_energy = -1.0;
  auto* sim_cmd = app.add_subcommand("simulate", "Evaluate a code file on one decoding arm");
  add_common(sim_cmd, sim_common);
  sim_cmd->add_option("--code", sim_code_path, "Code file")->required();
  sim_cmd->add_option("--arm", sim_arm, "QUANTUM_EXACT | QUANTUM_MC | CLASSICAL_MC");
  sim_cmd->add_option("--trials", sim.trials, "Monte Carlo trials");
  sim_cmd->add_option("--energy", sim_energy, "Override the code file's E");
  sim_cmd->add_option("--eta", sim.eta, "Transmissivity in (0, 1]");
  sim_cmd->add_option("--receiver", sim_receiver, "DOLINAR | HOMODYNE | KENNEDY (classical arm)");
  sim_cmd->add_option("--frozen-average", sim_averaging, "stored | all | sampled (exact arm)");
  sim_cmd->add_option("--frozen-handling", sim_handling, "average | condition");
  sim_cmd->add_option("--n-exact", sim.exact_limit, "Exact-simulation size limit (<= 10)");
  sim_cmd->add_option("--k-exact", sim.message_limit, "Exact block-error message limit");
  sim_cmd->add_option("--trial-log", sim_trial_log, "Per-trial CSV log path");

  // compare
  CommonOptions cmp_common;
  CompareConfig cmp;
  std::string cmp_receiver = "DOLINAR";
  std::string cmp_classical_log;
  std::string cmp_quantum_log;
  auto* cmp_cmd = app.add_subcommand("compare", "Quantum vs classical arm at identical (N, K)");
  add_common(cmp_cmd, cmp_common);
  cmp_cmd->add_option("--energy", cmp.energy, "Mean photon number per pulse")->required();
  cmp_cmd->add_option("--eta", cmp.eta, "Transmissivity in (0, 1]");
  cmp_cmd->add_option("--n", cmp.n, "Block length")->required();
  cmp_cmd->add_option("--k", cmp.k, "Information bits")->required();
  cmp_cmd->add_option("--trials", cmp.trials, "Monte Carlo trials per arm");
  cmp_cmd->add_option("--receiver", cmp_receiver, "DOLINAR | HOMODYNE | KENNEDY");
  cmp_cmd->add_option("--n-exact", cmp.exact_limit, "Exact-simulation size limit (<= 10)");
  cmp_cmd->add_option("--classical-log", cmp_classical_log, "Classical-arm trial log path");
  cmp_cmd->add_option("--quantum-log", cmp_quantum_log, "Quantum-arm trial log path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParameter;
  }

  try {
    if (*cap_cmd) {
      if (cap_linear) cap.logarithmic = false;
      cap.schemes = parse_schemes(cap_schemes);
      echo_params(cap_common, "capacity",
                  {{"e_min", format_real(cap.e_min)},
                   {"e_max", format_real(cap.e_max)},
                   {"points", std::to_string(cap.points)},
                   {"grid", cap.logarithmic ? "log" : "linear"},
                   {"schemes", cap_schemes.empty() ? "ALL" : cap_schemes},
                   {"ppm_q", std::to_string(cap.table.ppm_q)}});
      const auto points = run_capacity(cap);
      emit(cap_common.out, [&](std::ostream& os) { write_capacity_csv(os, points); });
      return kOk;
    }

    if (*con_cmd) {
      con.mode = lookup<ProfileMode>({{"exact", ProfileMode::kExact}, {"surrogate", ProfileMode::kSurrogateUpper}},
                                     con_mode, "mode");
      con.rule = lookup<SelectionRule::Kind>({{"target", SelectionRule::Kind::kTargetRate},
                                              {"threshold", SelectionRule::Kind::kThreshold}},
                                             con_rule, "rule") == SelectionRule::Kind::kThreshold
                     ? SelectionRule::threshold(con_beta)
                     : SelectionRule::target_rate(con_k);
      con.frozen.random = lookup<bool>({{"zero", false}, {"random", true}}, con_frozen, "frozen mode");
      con.frozen.seed = con_common.seed;
      con.threads = con_common.threads;
      echo_params(con_common, "construct",
                  {{"n", std::to_string(con.n)},
                   {"energy", format_real(con.energy)},
                   {"eta", format_real(con.eta)},
                   {"rule", con_rule},
                   {"k", std::to_string(con_k)},
                   {"beta", format_real(con_beta)},
                   {"mode", con_mode},
                   {"frozen", con_frozen}});
      warn_if_clamped(con.energy, con.eta);
      const auto result = run_construct(con);
      if (result.code.info_set.empty() && con.rule.kind == SelectionRule::Kind::kThreshold) {
        std::cerr << "note: threshold rule selected an empty information set\n";
      }
      emit(con_common.out, [&](std::ostream& os) { write_code(os, result.code, result.comments); });
      return kOk;
    }

    if (*sim_cmd) {
      const auto arm = parse_arm(sim_arm);
      if (!arm) throw ParameterError("unknown arm '" + sim_arm + "'");
      sim.arm = *arm;
      const auto receiver = parse_receiver(sim_receiver);
      if (!receiver) throw ParameterError("unknown receiver '" + sim_receiver + "'");
      sim.receiver = *receiver;
      sim.averaging = lookup<FrozenAveraging>(
          {{"stored", FrozenAveraging::kStored}, {"all", FrozenAveraging::kAll}, {"sampled", FrozenAveraging::kSampled}},
          sim_averaging, "frozen averaging");
      sim.frozen_handling = lookup<FrozenHandling>(
          {{"average", FrozenHandling::kAverageAll}, {"condition", FrozenHandling::kConditionOnFrozen}},
          sim_handling, "frozen handling");
      if (sim_energy >= 0.0) sim.energy = sim_energy;
      sim.seed = sim_common.seed;
      sim.threads = sim_common.threads;
      const PolarCode code = read_code_file(sim_code_path);
      echo_params(sim_common, "simulate",
                  {{"code", sim_code_path}, {"arm", sim_arm}, {"trials", std::to_string(sim.trials)},
                   {"receiver", sim_receiver}, {"frozen_average", sim_averaging},
                   {"frozen_handling", sim_handling}});
      const auto result = run_simulate(code, sim);
      emit(sim_common.out, [&](std::ostream& os) { write_report(os, result.report); });
      if (!sim_trial_log.empty()) {
        emit(sim_trial_log, [&](std::ostream& os) { write_trial_log(os, result.trials); });
      }
      if (result.anomalies > 0) {
        std::cerr << "numeric anomaly: " << result.anomalies << " trial(s) sampled a zero-norm branch\n";
        return kAnomaly;
      }
      return kOk;
    }

    if (*cmp_cmd) {
      const auto receiver = parse_receiver(cmp_receiver);
      if (!receiver) throw ParameterError("unknown receiver '" + cmp_receiver + "'");
      cmp.receiver = *receiver;
      cmp.seed = cmp_common.seed;
      cmp.threads = cmp_common.threads;
      echo_params(cmp_common, "compare",
                  {{"energy", format_real(cmp.energy)}, {"n", std::to_string(cmp.n)},
                   {"k", std::to_string(cmp.k)}, {"trials", std::to_string(cmp.trials)},
                   {"receiver", cmp_receiver}});
      warn_if_clamped(cmp.energy, cmp.eta);
      const auto result = run_compare(cmp);
      emit(cmp_common.out, [&](std::ostream& os) { write_report(os, result.report); });
      if (!cmp_classical_log.empty()) {
        emit(cmp_classical_log, [&](std::ostream& os) { write_trial_log(os, result.classical_trials); });
      }
      if (!cmp_quantum_log.empty()) {
        emit(cmp_quantum_log, [&](std::ostream& os) { write_trial_log(os, result.quantum_trials); });
      }
      if (result.anomalies > 0) {
        std::cerr << "numeric anomaly: " << result.anomalies << " trial(s) sampled a zero-norm branch\n";
        return kAnomaly;
      }
      return kOk;
    }
  } catch (const GuardViolation& e) {
    std::cerr << "guard violation: " << e.what() << '\n';
    return kGuard;
  } catch (const NumericAnomaly& e) {
    std::cerr << "numeric anomaly: " << e.what() << '\n';
    return kAnomaly;
  } catch (const ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return kParameter;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParameter;
  }
  return kOk;
}
