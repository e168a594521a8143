#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace su2twist {

struct TwistLetter {
  std::string name;  // twist generator, e.g. "X", "Y", "K", "W", "Wp"
  long power = 1;
  bool operator==(const TwistLetter&) const = default;
};

/// Dehn twists in application order: "X2 Y-1 X1" applies tau_X twice, then tau_Y^-1, then tau_X.
class TwistWord {
 public:
  TwistWord() = default;
  explicit TwistWord(std::vector<TwistLetter> letters);

  static TwistWord parse(std::string_view text);

  /// Appends, merging with the last letter when the generator repeats; zero powers vanish.
  void append(const std::string& name, long power);
  void append(const TwistWord& other);

  const std::vector<TwistLetter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  /// Total number of single twists, sum of |power|.
  std::size_t length() const;
  TwistWord inverse() const;
  std::string to_string() const;

  bool operator==(const TwistWord&) const = default;

 private:
  std::vector<TwistLetter> letters_;
};

}  // namespace su2twist
