#include "isac/ssk.hpp"

#include <bit>

#include "isac/errors.hpp"

namespace isac {

int bits_per_symbol(int n_antennas) {
  if (n_antennas < 2 || !std::has_single_bit(static_cast<unsigned>(n_antennas)))
    throw ConfigError("bits_per_symbol: antenna count must be a power of two >= 2");
  return std::countr_zero(static_cast<unsigned>(n_antennas));
}

SskSymbol map_bits(std::string_view bits, int n_antennas) {
  const int bps = bits_per_symbol(n_antennas);
  if (static_cast<int>(bits.size()) != bps)
    throw ConfigError("map_bits: bit group length must equal log2(N_t)");
  int index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw ConfigError("map_bits: bits must be 0/1");
    index = (index << 1) | (c - '0');
  }
  SskSymbol sym;
  sym.bits.assign(bits);
  sym.antenna_index = index;
  sym.selection_vector.assign(n_antennas, 0.0);
  sym.selection_vector[index] = 1.0;
  return sym;
}

std::string demap_index(int antenna_index, int n_antennas) {
  const int bps = bits_per_symbol(n_antennas);
  if (antenna_index < 0 || antenna_index >= n_antennas)
    throw ConfigError("demap_index: antenna index out of range");
  std::string bits(bps, '0');
  for (int b = 0; b < bps; ++b)
    if (antenna_index & (1 << (bps - 1 - b))) bits[b] = '1';
  return bits;
}

}  // namespace isac
