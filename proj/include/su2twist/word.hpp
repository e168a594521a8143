#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace su2twist {

struct Letter {
  int gen = 0;  // 0-based generator index
  int exp = 1;  // +1 or -1
  bool operator==(const Letter&) const = default;
};

/// Word in a free group on named generators.
class FreeWord {
 public:
  FreeWord() = default;
  explicit FreeWord(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  static FreeWord generator(int gen, int exp = 1) { return FreeWord({Letter{gen, exp}}); }

  /// Parses tokens like "A1 A2^-1 A3" (1-based indices, whitespace or '*' separated).
  /// Names may also be given explicitly, e.g. parse("X Y^-1", {"X", "Y"}).
  static FreeWord parse(std::string_view text, const std::vector<std::string>& names = {});

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  int max_generator() const;

  FreeWord inverse() const;
  FreeWord operator*(const FreeWord& o) const;
  /// Cancels adjacent x x^-1 pairs.
  FreeWord reduced() const;

  std::string to_string(const std::vector<std::string>& names = {}) const;

  bool operator==(const FreeWord&) const = default;

 private:
  std::vector<Letter> letters_;
};

FreeWord commutator_word(const FreeWord& a, const FreeWord& b);

}  // namespace su2twist
