#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cqpolar {

/// Binary block of length N = 2^n, one bit per byte.
using BitBlock = std::vector<std::uint8_t>;

bool is_power_of_two(std::size_t n);

/// log2 of a power of two; throws ParameterError otherwise.
int checked_log2(std::size_t n);

/// Index permutation of B_N (reverse the n-bit binary expansion). An involution.
std::vector<std::size_t> bit_reversal(std::size_t n);

/// x = u * G_N over GF(2), G_N = B_N F^{(x)n}, F = [[1,0],[1,1]].
///
/// The bit-reversal permutation is applied first, followed by n in-place XOR
/// butterfly stages. Indices are 0-based: u_1..u_N of the usual notation are
/// u[0]..u[N-1].
BitBlock encode(std::span<const std::uint8_t> u);

void encode_in_place(std::span<std::uint8_t> u);

std::string to_bitstring(std::span<const std::uint8_t> bits);
BitBlock from_bitstring(std::string_view s);

}  // namespace cqpolar
