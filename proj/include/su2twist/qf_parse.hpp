#pragma once

#include "su2twist/qfield.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace su2twist {

/// A number read from text. `exact` is set when the value lies in Q(sqrt2, sqrt5);
/// `value` always holds a long-double evaluation.
struct ParsedValue {
  std::optional<QFElement> exact;
  long double value = 0.0L;
  std::string text;

  double to_double() const { return static_cast<double>(value); }
};

/// Grammar: + - * / ( ), rational literals, decimals, the names sqrt2 sqrt5 sqrt10 r s,
/// and sqrt(expr). sqrt of anything outside {squares, 2, 5, 10} x squares falls back to
/// a numeric value. Decimal literals are never exact. Throws std::invalid_argument.
ParsedValue parse_value(std::string_view text);

}  // namespace su2twist
