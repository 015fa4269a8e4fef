#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "cqpolar/construction.hpp"

namespace cqpolar {

/// Line-oriented text format:
///
///   N=<int>
///   K=<int>
///   mode=<EXACT|SURROGATE_UPPER>
///   A=<comma-separated indices>
///   frozen=<bitstring over the complement in index order>
///   sqrt_f=<comma-separated reals, 17 significant digits>
///   E=<real>            (optional)
///
/// Lines starting with '#' are comments and are ignored by the parser.
void write_code(std::ostream& os, const PolarCode& code,
                const std::vector<std::string>& comments = {});
PolarCode parse_code(std::istream& is);

PolarCode read_code_file(const std::string& path);
void write_code_file(const std::string& path, const PolarCode& code,
                     const std::vector<std::string>& comments = {});

/// Shortest-round-trip-safe decimal rendering (17 significant digits, "C" locale).
std::string format_real(double value);
double parse_real(std::string_view text);

}  // namespace cqpolar
