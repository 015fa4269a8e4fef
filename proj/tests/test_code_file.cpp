#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <random>
#include <sstream>
#include <string>

#include "cqpolar/channel_model.hpp"
#include "cqpolar/code_file.hpp"
#include "cqpolar/construction.hpp"
#include "cqpolar/errors.hpp"

using namespace cqpolar;

namespace {

PolarCode sample_code() {
  auto code = select_information_set(exact_profile(8, QubitEmbedding::from_channel(BpskChannel(0.25))),
                                     SelectionRule::target_rate(3), {true, 4});
  code.energy = 0.25;
  return code;
}

PolarCode parse(const std::string& text) {
  std::istringstream is(text);
  return parse_code(is);
}

}  // namespace

TEST_CASE("real formatting round-trips bit-exactly") {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double v = dist(gen) * std::pow(10.0, static_cast<int>(gen() % 40) - 20);
    CHECK(parse_real(format_real(v)) == v);
  }
  CHECK(parse_real(format_real(std::numeric_limits<double>::denorm_min())) ==
        std::numeric_limits<double>::denorm_min());
  CHECK(format_real(0.25) == "0.25");
  CHECK_THROWS_AS(parse_real("1.0x"), ParameterError);
}

TEST_CASE("code file layout") {
  std::ostringstream os;
  write_code(os, sample_code(), {"note=first"});
  const std::string text = os.str();
  CHECK(text.rfind("N=8\nK=3\nmode=EXACT\nA=3,5,7\nfrozen=", 0) == 0);
  CHECK(text.find("\nsqrt_f=0.93698847117") != std::string::npos);
  CHECK(text.find("\nE=0.25\n") != std::string::npos);
  CHECK(text.find("\n# note=first\n") != std::string::npos);
}

TEST_CASE("write then parse reproduces the structure losslessly") {
  const auto code = sample_code();
  std::ostringstream os;
  write_code(os, code, {"comment"});
  const auto back = parse(os.str());
  CHECK(back.n == code.n);
  CHECK(back.info_set == code.info_set);
  CHECK(back.frozen_values == code.frozen_values);
  CHECK(back.profile.mode == code.profile.mode);
  CHECK(back.profile.sqrt_f == code.profile.sqrt_f);
  CHECK(back.energy == code.energy);
}

TEST_CASE("file round trip") {
  const auto path = std::filesystem::temp_directory_path() / "cqpolar_code_file_test.code";
  const auto code = sample_code();
  write_code_file(path.string(), code);
  const auto back = read_code_file(path.string());
  CHECK(back.info_set == code.info_set);
  std::filesystem::remove(path);
  CHECK_THROWS(read_code_file((path.parent_path() / "missing" / "x.code").string()));
}

TEST_CASE("parser rejects malformed files") {
  const std::string ok = "N=2\nK=1\nmode=SURROGATE_UPPER\nA=1\nfrozen=0\nsqrt_f=0.5,0.25\n";
  CHECK(parse(ok).info_set == std::vector<std::size_t>{1});
  CHECK(parse("# header\n" + ok).n == 2);
  CHECK_THROWS_AS(parse("N=2\nK=1\nmode=SURROGATE_UPPER\nA=1\nfrozen=0\n"), ParameterError);
  CHECK_THROWS_AS(parse(ok + "N=2\n"), ParameterError);
  CHECK_THROWS_AS(parse(ok + "color=blue\n"), ParameterError);
  CHECK_THROWS_AS(parse("N=2\nK=2\nmode=SURROGATE_UPPER\nA=1\nfrozen=0\nsqrt_f=0.5,0.25\n"), ParameterError);
  CHECK_THROWS_AS(parse("N=3\nK=1\nmode=SURROGATE_UPPER\nA=1\nfrozen=00\nsqrt_f=0.5,0.25,1\n"), ParameterError);
  CHECK_THROWS_AS(parse("N=2\nK=1\nmode=FANCY\nA=1\nfrozen=0\nsqrt_f=0.5,0.25\n"), ParameterError);
  CHECK_THROWS_AS(parse("N=2\nK=1\nmode=SURROGATE_UPPER\nA=2\nfrozen=0\nsqrt_f=0.5,0.25\n"), ParameterError);
  CHECK_THROWS_AS(parse("N=2\nK=1\nmode=SURROGATE_UPPER\nA=1\nfrozen=01\nsqrt_f=0.5,0.25\n"), ParameterError);
  CHECK_THROWS_AS(parse("N=2\nK=1\nmode=SURROGATE_UPPER\nA=1\nfrozen=0\nsqrt_f=0.5,1.5\n"), ParameterError);
  CHECK_THROWS_AS(parse("N=2\nK=1\nmode=SURROGATE_UPPER\nA=1\nfrozen=0\nsqrt_f=0.5\n"), ParameterError);
  CHECK_THROWS_AS(parse("garbage line\n"), ParameterError);
}
