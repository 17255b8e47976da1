#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace catpursuit {

/// First n letters of the Thue-Morse word over {1, 2}: letter k is 1 + the
/// parity of the number of set bits in k.
std::vector<int> thue_morse_word(std::size_t n);

/// True when no nonempty subword occurs three times in a row. Brute force.
bool is_cube_free(std::span<const int> word);

}  // namespace catpursuit
