#include "cqpolar/polar_transform.hpp"

#include <string>
#include <utility>

#include "cqpolar/errors.hpp"

namespace cqpolar {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

int checked_log2(std::size_t n) {
  if (!is_power_of_two(n)) {
    throw ParameterError("block length must be a power of two, got " + std::to_string(n));
  }
  int k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

std::vector<std::size_t> bit_reversal(std::size_t n) {
  const int bits = checked_log2(n);
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = 0;
    for (int b = 0; b < bits; ++b) r |= ((i >> b) & 1u) << (bits - 1 - b);
    perm[i] = r;
  }
  return perm;
}

void encode_in_place(std::span<std::uint8_t> u) {
  const std::size_t n = u.size();
  const auto perm = bit_reversal(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (u[i] > 1) throw ParameterError("bit values must be 0 or 1");
    if (perm[i] > i) std::swap(u[i], u[perm[i]]);
  }
  // (a, b) -> (a ^ b, b) on every half-block pair, at every scale.
  for (std::size_t half = 1; half < n; half <<= 1) {
    for (std::size_t block = 0; block < n; block += 2 * half) {
      for (std::size_t j = block; j < block + half; ++j) u[j] ^= u[j + half];
    }
  }
}

BitBlock encode(std::span<const std::uint8_t> u) {
  BitBlock x(u.begin(), u.end());
  encode_in_place(x);
  return x;
}

std::string to_bitstring(std::span<const std::uint8_t> bits) {
  std::string s;
  s.reserve(bits.size());
  for (auto b : bits) s.push_back(b ? '1' : '0');
  return s;
}

BitBlock from_bitstring(std::string_view s) {
  BitBlock bits;
  bits.reserve(s.size());
  for (char ch : s) {
    if (ch != '0' && ch != '1') throw ParameterError("invalid bit character in '" + std::string(s) + "'");
    bits.push_back(static_cast<std::uint8_t>(ch - '0'));
  }
  return bits;
}

}  // namespace cqpolar
