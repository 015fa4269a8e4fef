#include <doctest.h>

#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <vector>

#include "cqpolar/parallel.hpp"
#include "cqpolar/rng.hpp"
#include "cqpolar/statistics.hpp"

using namespace cqpolar;

TEST_CASE("Philox4x32-10 known-answer vectors") {
  using C = Philox4x32::Counter;
  using K = Philox4x32::Key;
  CHECK(Philox4x32::generate(C{0, 0, 0, 0}, K{0, 0}) ==
        C{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
  CHECK(Philox4x32::generate(C{0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, K{0xffffffffu, 0xffffffffu}) ==
        C{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
  CHECK(Philox4x32::generate(C{0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, K{0xa4093822u, 0x299f31d0u}) ==
        C{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("streams are pure functions of their coordinates") {
  CounterStream a(42, 7, kMessageStream);
  CounterStream b(42, 7, kMessageStream);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  CHECK(a.draws() == 100);

  std::set<std::uint64_t> firsts;
  for (std::uint64_t seed : {1ull, 2ull, 1ull << 40}) {
    for (std::uint64_t trial : {0ull, 1ull, 1ull << 33}) {
      for (std::uint32_t purpose : {kMessageStream, kMeasurementStream, kChannelStream, kFrozenStream}) {
        firsts.insert(CounterStream(seed, trial, purpose).next_u64());
      }
    }
  }
  CHECK(firsts.size() == 36);
}

TEST_CASE("uniform draws lie in [0,1) with the right mean; bits are balanced") {
  CounterStream s(5, 0, kMeasurementStream);
  double sum = 0.0;
  int ones = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = s.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
  }
  CounterStream t(5, 0, kMessageStream);
  for (int i = 0; i < n; ++i) ones += t.bit();
  CHECK(std::abs(sum / n - 0.5) < 4 * std::sqrt(1.0 / 12 / n));
  CHECK(std::abs(ones / static_cast<double>(n) - 0.5) < 4 * 0.5 / std::sqrt(n));
}

TEST_CASE("binomial estimate and Wilson interval") {
  const auto e = binomial_estimate(10, 100);
  CHECK(e.rate == 0.1);
  CHECK(e.sigma == doctest::Approx(std::sqrt(0.1 * 0.9 / 100)));
  // Wilson 95% interval for 10/100.
  CHECK(e.ci_low == doctest::Approx(0.0552291).epsilon(1e-4));
  CHECK(e.ci_high == doctest::Approx(0.1743657).epsilon(1e-4));
  const auto zero = binomial_estimate(0, 50);
  CHECK(zero.ci_low == 0.0);
  CHECK(zero.ci_high > 0.0);
  const auto empty = binomial_estimate(0, 0);
  CHECK(empty.trials == 0);
}

TEST_CASE("trial log format") {
  std::vector<TrialRecord> records(2);
  records[0] = {0, 9, "01", "01", true, false, 0.25};
  records[1] = {1, 9, "11", "10", false, false, std::numeric_limits<double>::quiet_NaN()};
  std::ostringstream os;
  write_trial_log(os, records);
  CHECK(os.str() == "trial,seed,message,decoded,success,min_step_prob\n0,9,01,01,1,0.25\n1,9,11,10,0,\n");
}

TEST_CASE("parallel_for covers every index once regardless of thread count") {
  for (unsigned threads : {1u, 2u, 5u}) {
    std::vector<int> hits(103, 0);
    parallel_for(hits.size(), threads, [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) CHECK(h == 1);
  }
}
