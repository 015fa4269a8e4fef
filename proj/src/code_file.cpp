#include "cqpolar/code_file.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <system_error>

#include "cqpolar/errors.hpp"

namespace cqpolar {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_commas(std::string_view s) {
  std::vector<std::string_view> out;
  if (trim(s).empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(',', start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::size_t parse_index(std::string_view text) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParameterError("invalid integer '" + std::string(text) + "' in code file");
  }
  return value;
}

}  // namespace

std::string format_real(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_real(std::string_view text) {
  text = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParameterError("invalid real number '" + std::string(text) + "'");
  }
  return value;
}

void write_code(std::ostream& os, const PolarCode& code, const std::vector<std::string>& comments) {
  code.validate();
  os << "N=" << code.n << '\n';
  os << "K=" << code.k() << '\n';
  os << "mode=" << profile_mode_name(code.profile.mode) << '\n';
  os << "A=";
  for (std::size_t j = 0; j < code.info_set.size(); ++j) os << (j ? "," : "") << code.info_set[j];
  os << '\n';
  os << "frozen=" << to_bitstring(code.frozen_values) << '\n';
  os << "sqrt_f=";
  for (std::size_t j = 0; j < code.profile.sqrt_f.size(); ++j) {
    os << (j ? "," : "") << format_real(code.profile.sqrt_f[j]);
  }
  os << '\n';
  if (code.energy) os << "E=" << format_real(*code.energy) << '\n';
  for (const auto& c : comments) os << "# " << c << '\n';
}

PolarCode parse_code(std::istream& is) {
  std::map<std::string, std::string, std::less<>> fields;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ParameterError("code file line " + std::to_string(line_no) + ": expected key=value");
    }
    std::string key(trim(view.substr(0, eq)));
    if (key != "N" && key != "K" && key != "mode" && key != "A" && key != "frozen" &&
        key != "sqrt_f" && key != "E") {
      throw ParameterError("code file line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    if (!fields.emplace(key, std::string(trim(view.substr(eq + 1)))).second) {
      throw ParameterError("code file: duplicate key '" + key + "'");
    }
  }
  for (const char* required : {"N", "K", "mode", "A", "frozen", "sqrt_f"}) {
    if (!fields.count(required)) throw ParameterError(std::string("code file: missing key '") + required + "'");
  }

  PolarCode code;
  code.n = parse_index(fields["N"]);
  const std::size_t k = parse_index(fields["K"]);
  const auto mode = parse_profile_mode(fields["mode"]);
  if (!mode) throw ParameterError("code file: unknown mode '" + fields["mode"] + "'");
  for (auto tok : split_commas(fields["A"])) code.info_set.push_back(parse_index(tok));
  code.frozen_values = from_bitstring(fields["frozen"]);
  code.profile.n = code.n;
  code.profile.mode = *mode;
  for (auto tok : split_commas(fields["sqrt_f"])) code.profile.sqrt_f.push_back(parse_real(tok));
  if (auto it = fields.find("E"); it != fields.end()) code.energy = parse_real(it->second);
  if (k != code.info_set.size()) {
    throw ParameterError("code file: K=" + std::to_string(k) + " but A lists " +
                         std::to_string(code.info_set.size()) + " indices");
  }
  code.validate();
  return code;
}

PolarCode read_code_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open code file '" + path + "'");
  return parse_code(in);
}

void write_code_file(const std::string& path, const PolarCode& code,
                     const std::vector<std::string>& comments) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write code file '" + path + "'");
  write_code(out, code, comments);
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace cqpolar
