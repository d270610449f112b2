#include "cusp/word.hpp"

#include <algorithm>
#include <cctype>

namespace cusp {

Word inverse_word(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(inverse_of(*it));
  return out;
}

bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

std::string format_word(const Word& w, const std::vector<std::string>& names) {
  if (w.empty()) return "1";
  std::string out;
  out.reserve(w.size());
  for (Letter l : w) {
    const int g = gen_of(l);
    if (g < 0 || g >= static_cast<int>(names.size())) throw MalformedWordError("letter out of range");
    std::string name = names[static_cast<std::size_t>(g)];
    if (is_inverse(l)) {
      for (char& c : name) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    out += name;
  }
  return out;
}

Word parse_word(const std::string& text, const std::vector<std::string>& names) {
  Word out;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == '.') continue;
    if (c == '1' && out.empty() && text.size() <= 1) return out;
    const bool inv = std::isupper(static_cast<unsigned char>(c)) != 0;
    const char base = inv ? static_cast<char>(std::tolower(static_cast<unsigned char>(c))) : c;
    int gen = -1;
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i].size() == 1 && names[i][0] == base) {
        gen = static_cast<int>(i);
        break;
      }
    }
    if (gen < 0) throw MalformedWordError(std::string("unknown generator symbol '") + c + "'");
    out.push_back(letter(gen, inv));
  }
  return out;
}

}  // namespace cusp
