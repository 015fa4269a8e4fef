#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "cqpolar/capacity.hpp"
#include "cqpolar/code_file.hpp"
#include "cqpolar/errors.hpp"
#include "cqpolar/harness.hpp"

using namespace cqpolar;

namespace {

std::string report_body(const RunReport& report) {
  std::ostringstream os;
  write_report(os, report);
  std::string text = os.str();
  const auto ts = text.find("# timestamp=");
  const auto end = text.find('\n', ts);
  return text.erase(ts, end - ts + 1);
}

std::string log_text(const std::vector<TrialRecord>& records) {
  std::ostringstream os;
  write_trial_log(os, records);
  return os.str();
}

PolarCode build(std::size_t n, std::size_t k, double energy, ProfileMode mode = ProfileMode::kExact) {
  ConstructConfig cfg;
  cfg.n = n;
  cfg.energy = energy;
  cfg.mode = mode;
  cfg.rule = SelectionRule::target_rate(k);
  return run_construct(cfg).code;
}

}  // namespace

TEST_CASE("capacity command grid") {
  CapacityConfig cfg;
  const auto rows = run_capacity(cfg);
  CHECK(rows.size() == 50 * all_schemes().size());
  cfg.e_min = 0.25;
  cfg.e_max = 0.25;
  cfg.points = 1;
  cfg.schemes = {Scheme::kBpskHolevo};
  const auto one = run_capacity(cfg);
  REQUIRE(one.size() == 1);
  CHECK(std::abs(one[0].bits_per_use - 0.715349166710721734) <= 1e-6);
}

TEST_CASE("construct command") {
  CHECK(build(4, 1, 0.25, ProfileMode::kSurrogateUpper).info_set == std::vector<std::size_t>{3});
  ConstructConfig bright;
  bright.n = 2;
  bright.energy = 40.0;
  bright.mode = ProfileMode::kSurrogateUpper;
  bright.rule = SelectionRule::threshold(0.4);
  CHECK(run_construct(bright).code.info_set == std::vector<std::size_t>{0, 1});

  ConstructConfig cfg;
  cfg.n = 8;
  cfg.rule = SelectionRule::target_rate(3);
  const auto result = run_construct(cfg);
  std::ostringstream os;
  write_code(os, result.code, result.comments);
  std::istringstream is(os.str());
  const auto back = parse_code(is);
  CHECK(back.info_set == result.code.info_set);
  CHECK(back.profile.sqrt_f == result.code.profile.sqrt_f);
  CHECK(os.str().find("# error_bound=") != std::string::npos);

  cfg.n = 16;
  CHECK_THROWS_AS(run_construct(cfg), GuardViolation);
  cfg.n = 12;
  CHECK_THROWS_AS(run_construct(cfg), ParameterError);
}

TEST_CASE("threshold construction reports an empty set") {
  ConstructConfig cfg;
  cfg.n = 4;
  cfg.energy = 0.01;
  cfg.rule = SelectionRule::threshold(0.45);
  const auto result = run_construct(cfg);
  CHECK(result.code.info_set.empty());
  bool warned = false;
  for (const auto& c : result.comments) warned = warned || c.rfind("warning=", 0) == 0;
  CHECK(warned);
}

TEST_CASE("simulate: exact arm at N = 1 is the Dolinar error") {
  const auto code = build(1, 1, 0.25);
  SimulateConfig cfg;
  const auto result = run_simulate(code, cfg);
  const auto* row = result.report.find("block_error_exact");
  REQUIRE(row != nullptr);
  CHECK(std::abs(row->value - dolinar_pe(0.25)) <= 1e-10);
  CHECK(result.bound_holds);
}

TEST_CASE("simulate: Monte Carlo arm agrees with the exact arm") {
  const auto code = build(4, 2, 0.25);
  SimulateConfig exact_cfg;
  const double exact = run_simulate(code, exact_cfg).report.find("block_error_exact")->value;
  SimulateConfig mc_cfg;
  mc_cfg.arm = Arm::kQuantumMc;
  mc_cfg.trials = 10000;
  mc_cfg.seed = 123;
  const auto mc = run_simulate(code, mc_cfg);
  const double rate = mc.report.find("block_error_mc")->value;
  CHECK(std::abs(rate - exact) <= 3 * std::sqrt(exact * (1 - exact) / 10000));
  CHECK(mc.anomalies == 0);
}

TEST_CASE("simulate: identical seeds give identical logs and reports") {
  const auto code = build(4, 2, 0.25);
  for (Arm arm : {Arm::kQuantumMc, Arm::kClassicalMc}) {
    SimulateConfig cfg;
    cfg.arm = arm;
    cfg.trials = 500;
    cfg.seed = 9;
    const auto a = run_simulate(code, cfg);
    cfg.threads = 3;
    const auto b = run_simulate(code, cfg);
    CHECK(log_text(a.trials) == log_text(b.trials));
    CHECK(report_body(a.report) == report_body(b.report));
    cfg.seed = 10;
    CHECK(log_text(run_simulate(code, cfg).trials) != log_text(a.trials));
  }
}

TEST_CASE("simulate: missing energy is a parameter error") {
  auto code = build(2, 1, 0.25);
  code.energy.reset();
  CHECK_THROWS_AS(run_simulate(code, SimulateConfig{}), ParameterError);
  SimulateConfig cfg;
  cfg.energy = 0.25;
  CHECK_NOTHROW(run_simulate(code, cfg));
}

TEST_CASE("simulate: classical arm reports the DMC and union bound") {
  const auto code = build(8, 3, 0.25, ProfileMode::kSurrogateUpper);
  SimulateConfig cfg;
  cfg.arm = Arm::kClassicalMc;
  cfg.trials = 2000;
  cfg.receiver = Receiver::kKennedy;
  const auto result = run_simulate(code, cfg);
  CHECK(result.report.find("dmc_crossover")->value == doctest::Approx(std::exp(-1.0)));
  CHECK(result.report.find("bhattacharyya_union_bound") != nullptr);
  CHECK(result.trials.size() == 2000);
}

TEST_CASE("compare command") {
  CompareConfig cfg;
  cfg.n = 4;
  cfg.k = 2;
  cfg.trials = 1000;
  const auto result = run_compare(cfg);
  const auto& report = result.report;
  CHECK(report.find("capacity_gap")->value == doctest::Approx(0.715349166710721734 - 0.523223389566805494).epsilon(1e-12));
  CHECK(report.find("channel_root_fidelity")->value == report.find("dmc_bhattacharyya")->value);
  bool identity_note = false;
  for (const auto& n : report.notes) identity_note = identity_note || n.find("identity") != std::string::npos;
  CHECK(identity_note);
  CHECK(report.find("quantum_block_error_exact") != nullptr);
  CHECK(result.classical_trials.size() == 1000);
  CHECK(result.quantum_trials.size() == 1000);

  CompareConfig dark;
  dark.energy = 0.0;
  dark.n = 2;
  dark.k = 1;
  dark.trials = 0;
  const auto zero = run_compare(dark);
  CHECK(zero.report.find("capacity_gap")->value == 0.0);
  CHECK(zero.report.find("capacity_holevo")->value == 0.0);
}

TEST_CASE("report numbers parse back exactly") {
  CompareConfig cfg;
  cfg.n = 4;
  cfg.k = 2;
  cfg.trials = 300;
  const auto report = run_compare(cfg).report;
  std::ostringstream os;
  write_report(os, report);
  std::istringstream is(os.str());
  std::string line;
  std::size_t row = 0;
  bool header = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      CHECK(line == "metric,value,ci_low,ci_high,kind");
      header = true;
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    REQUIRE(fields.size() == 5);
    CHECK(parse_real(fields[1]) == report.rows[row].value);
    if (report.rows[row].ci_low) CHECK(parse_real(fields[2]) == *report.rows[row].ci_low);
    ++row;
  }
  CHECK(row == report.rows.size());
}

TEST_CASE("arm names") {
  CHECK(parse_arm("QUANTUM_EXACT") == Arm::kQuantumExact);
  CHECK(parse_arm(arm_name(Arm::kClassicalMc)) == Arm::kClassicalMc);
  CHECK_FALSE(parse_arm("quantum").has_value());
}
