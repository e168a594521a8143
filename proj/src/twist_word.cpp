#include "su2twist/twist_word.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace su2twist {

TwistWord::TwistWord(std::vector<TwistLetter> letters) {
  for (auto& l : letters) {
    append(l.name, l.power);
  }
}

TwistWord TwistWord::parse(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string tok;
  TwistWord w;
  while (is >> tok) {
    std::size_t i = 0;
    while (i < tok.size() && std::isalpha(static_cast<unsigned char>(tok[i])) != 0) {
      ++i;
    }
    if (i == 0) {
      throw std::invalid_argument("twist token needs a generator name: " + tok);
    }
    long p = 1;
    if (i < tok.size()) {
      const std::string num = tok.substr(i);
      char* end = nullptr;
      p = std::strtol(num.c_str(), &end, 10);
      if (end == num.c_str() || *end != '\0') {
        throw std::invalid_argument("bad twist power: " + tok);
      }
    }
    w.append(tok.substr(0, i), p);
  }
  return w;
}

void TwistWord::append(const std::string& name, long power) {
  if (power == 0) {
    return;
  }
  if (!letters_.empty() && letters_.back().name == name) {
    letters_.back().power += power;
    if (letters_.back().power == 0) {
      letters_.pop_back();
    }
    return;
  }
  letters_.push_back({name, power});
}

void TwistWord::append(const TwistWord& other) {
  for (const auto& l : other.letters_) {
    append(l.name, l.power);
  }
}

std::size_t TwistWord::length() const {
  std::size_t n = 0;
  for (const auto& l : letters_) {
    n += static_cast<std::size_t>(std::labs(l.power));
  }
  return n;
}

TwistWord TwistWord::inverse() const {
  TwistWord w;
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
    w.append(it->name, -it->power);
  }
  return w;
}

std::string TwistWord::to_string() const {
  std::string s;
  for (const auto& l : letters_) {
    if (!s.empty()) {
      s += ' ';
    }
    s += l.name + std::to_string(l.power);
  }
  return s;
}

}  // namespace su2twist
