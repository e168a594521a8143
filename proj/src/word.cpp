#include "su2twist/word.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace su2twist {

namespace {

std::string default_name(int gen) { return "A" + std::to_string(gen + 1); }

int parse_exponent(std::string_view s, std::string_view token) {
  if (s.empty()) {
    return 1;
  }
  if (s.front() != '^') {
    throw std::invalid_argument("bad word token: " + std::string(token));
  }
  s.remove_prefix(1);
  if (s == "-1") {
    return -1;
  }
  if (s == "1" || s == "+1") {
    return 1;
  }
  throw std::invalid_argument("exponent must be +-1: " + std::string(token));
}

}  // namespace

FreeWord FreeWord::parse(std::string_view text, const std::vector<std::string>& names) {
  std::string cleaned(text);
  std::replace(cleaned.begin(), cleaned.end(), '*', ' ');
  std::istringstream is(cleaned);
  std::vector<Letter> out;
  std::string tok;
  while (is >> tok) {
    const auto caret = tok.find('^');
    const std::string head = tok.substr(0, caret);
    const std::string_view tail = caret == std::string::npos ? std::string_view{} : std::string_view(tok).substr(caret);
    int gen = -1;
    if (!names.empty()) {
      const auto it = std::find(names.begin(), names.end(), head);
      if (it != names.end()) {
        gen = static_cast<int>(it - names.begin());
      }
    }
    if (gen < 0 && head.size() >= 2 && head[0] == 'A' &&
        std::all_of(head.begin() + 1, head.end(), [](unsigned char c) { return std::isdigit(c) != 0; })) {
      gen = std::stoi(head.substr(1)) - 1;
    }
    if (gen < 0) {
      throw std::invalid_argument("unknown generator: " + head);
    }
    out.push_back({gen, parse_exponent(tail, tok)});
  }
  return FreeWord(std::move(out));
}

int FreeWord::max_generator() const {
  int m = -1;
  for (const auto& l : letters_) {
    m = std::max(m, l.gen);
  }
  return m;
}

FreeWord FreeWord::inverse() const {
  std::vector<Letter> out(letters_.rbegin(), letters_.rend());
  for (auto& l : out) {
    l.exp = -l.exp;
  }
  return FreeWord(std::move(out));
}

FreeWord FreeWord::operator*(const FreeWord& o) const {
  std::vector<Letter> out = letters_;
  out.insert(out.end(), o.letters_.begin(), o.letters_.end());
  return FreeWord(std::move(out));
}

FreeWord FreeWord::reduced() const {
  std::vector<Letter> out;
  for (const auto& l : letters_) {
    if (!out.empty() && out.back().gen == l.gen && out.back().exp == -l.exp) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return FreeWord(std::move(out));
}

std::string FreeWord::to_string(const std::vector<std::string>& names) const {
  std::string s;
  for (const auto& l : letters_) {
    if (!s.empty()) {
      s += ' ';
    }
    s += l.gen < static_cast<int>(names.size()) ? names[static_cast<std::size_t>(l.gen)] : default_name(l.gen);
    if (l.exp < 0) {
      s += "^-1";
    }
  }
  return s;
}

FreeWord commutator_word(const FreeWord& a, const FreeWord& b) { return a * b * a.inverse() * b.inverse(); }

}  // namespace su2twist
