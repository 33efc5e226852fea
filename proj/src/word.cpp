#include "sofic/word.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "sofic/errors.hpp"

namespace sofic {

GeneratorAlphabet::GeneratorAlphabet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw InvalidArgument("alphabet rank must be at least 1");
  std::set<std::string> seen;
  for (const auto& name : names_) {
    if (name.empty()) throw InvalidArgument("generator names must be nonempty");
    for (char c : name) {
      if (c == '\'' || c <= ' ' || c > '~') {
        throw InvalidArgument("generator name '" + name + "' is not a printable symbol");
      }
    }
    if (!seen.insert(name).second) throw InvalidArgument("duplicate generator name '" + name + "'");
  }
}

GeneratorAlphabet GeneratorAlphabet::standard(int rank) {
  if (rank < 1) throw InvalidArgument("alphabet rank must be at least 1");
  std::vector<std::string> names;
  for (int i = 0; i < rank; ++i) {
    names.push_back(rank <= 26 ? std::string(1, static_cast<char>('a' + i)) : "g" + std::to_string(i + 1));
  }
  return GeneratorAlphabet(std::move(names));
}

std::vector<Letter> GeneratorAlphabet::signed_letters() const {
  std::vector<Letter> letters;
  for (int i = 1; i <= rank(); ++i) letters.push_back(i);
  for (int i = 1; i <= rank(); ++i) letters.push_back(-i);
  return letters;
}

std::string GeneratorAlphabet::letter_name(Letter letter) const {
  if (!contains(letter)) throw InvalidArgument("letter " + std::to_string(letter) + " outside alphabet");
  const auto& base = names_[static_cast<std::size_t>((letter < 0 ? -letter : letter) - 1)];
  return letter < 0 ? base + "'" : base;
}

Word GeneratorAlphabet::parse(std::string_view text) const {
  Word word;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    bool inverse = false;
    if (token.size() > 1 && token.back() == '\'') {
      inverse = true;
      token.pop_back();
    }
    const auto it = std::find(names_.begin(), names_.end(), token);
    if (it == names_.end()) throw InvalidArgument("unknown generator '" + token + "'");
    const Letter letter = static_cast<Letter>(it - names_.begin()) + 1;
    word.push_back(inverse ? -letter : letter);
  }
  return word;
}

std::string GeneratorAlphabet::format(std::span<const Letter> word) const {
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i != 0) out += ' ';
    out += letter_name(word[i]);
  }
  return out;
}

Word reduce(std::span<const Letter> word, int rank) {
  Word out;
  out.reserve(word.size());
  for (Letter letter : word) {
    if (letter == 0 || letter > rank || letter < -rank) {
      throw InvalidArgument("letter " + std::to_string(letter) + " outside alphabet of rank " +
                            std::to_string(rank));
    }
    if (!out.empty() && out.back() == -letter) {
      out.pop_back();
    } else {
      out.push_back(letter);
    }
  }
  return out;
}

bool is_reduced(std::span<const Letter> word) {
  for (std::size_t i = 1; i < word.size(); ++i) {
    if (word[i] == -word[i - 1]) return false;
  }
  return std::find(word.begin(), word.end(), 0) == word.end();
}

Word inverse_word(std::span<const Letter> word) {
  Word out(word.rbegin(), word.rend());
  for (auto& letter : out) letter = -letter;
  return out;
}

}  // namespace sofic
