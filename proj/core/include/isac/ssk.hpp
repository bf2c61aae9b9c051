#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace isac {

/// One SSK symbol: a bit group, the antenna it activates, and the selection
/// vector (column of the identity) actually transmitted.
struct SskSymbol {
  std::string bits;
  int antenna_index = 0;
  std::vector<double> selection_vector;
};

/// log2(N_t). N_t must be a power of two >= 2.
int bits_per_symbol(int n_antennas);

/// Big-endian natural binary mapping of a log2(N_t)-bit group.
SskSymbol map_bits(std::string_view bits, int n_antennas);

/// Inverse of map_bits.
std::string demap_index(int antenna_index, int n_antennas);

}  // namespace isac
