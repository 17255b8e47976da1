#include "catpursuit/thue_morse.hpp"

#include <bit>

namespace catpursuit {

std::vector<int> thue_morse_word(std::size_t n) {
  std::vector<int> w(n);
  for (std::size_t k = 0; k < n; ++k) w[k] = 1 + (std::popcount(k) & 1);
  return w;
}

bool is_cube_free(std::span<const int> word) {
  const std::size_t n = word.size();
  for (std::size_t len = 1; 3 * len <= n; ++len) {
    // run counts positions i where word[i] == word[i + len]; a cube of
    // period len needs 2 * len consecutive matches.
    std::size_t run = 0;
    for (std::size_t i = 0; i + len < n; ++i) {
      run = (word[i] == word[i + len]) ? run + 1 : 0;
      if (run >= 2 * len) return false;
    }
  }
  return true;
}

}  // namespace catpursuit
