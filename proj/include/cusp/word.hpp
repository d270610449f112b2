#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cusp {

/// A letter is a generator or a formal inverse, packed as (gen << 1) | inv.
/// Words are strings of letters; std::u16string gives small-buffer storage,
/// cheap hashing and lexicographic comparison for free.
using Letter = char16_t;
using Word = std::u16string;

constexpr Letter letter(int gen, bool inv) {
  return static_cast<Letter>((gen << 1) | (inv ? 1 : 0));
}
constexpr int gen_of(Letter l) { return static_cast<int>(l) >> 1; }
constexpr bool is_inverse(Letter l) { return (static_cast<int>(l) & 1) != 0; }
constexpr Letter inverse_of(Letter l) { return static_cast<Letter>(static_cast<int>(l) ^ 1); }

Word inverse_word(const Word& w);

/// Shortlex order induced by generator order: shorter first, then letterwise.
bool shortlex_less(const Word& a, const Word& b);

struct MalformedWordError : std::runtime_error {
  explicit MalformedWordError(const std::string& what) : std::runtime_error(what) {}
};

/// Render a word with one ASCII letter per generator: 'a'..'z' for the
/// generator, 'A'..'Z' for its inverse. The empty word renders as "1".
std::string format_word(const Word& w, const std::vector<std::string>& names);

/// Parse the same representation. Whitespace between letters is allowed.
Word parse_word(const std::string& text, const std::vector<std::string>& names);

}  // namespace cusp
