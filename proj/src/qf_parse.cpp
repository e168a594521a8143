#include "su2twist/qf_parse.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace su2twist {

namespace {

// Square root of a nonnegative rational as m * sqrt(k), k in {1,2,5,10}, when possible.
std::optional<QFElement> exact_sqrt(const mpq_class& q) {
  if (sgn(q) < 0) {
    return std::nullopt;
  }
  if (sgn(q) == 0) {
    return QFElement(0);
  }
  const long ks[4] = {1, 2, 5, 10};
  for (int i = 0; i < 4; ++i) {
    mpq_class t = q / ks[i];
    t.canonicalize();
    const mpz_class& n = t.get_num();
    const mpz_class& d = t.get_den();
    if (mpz_perfect_square_p(n.get_mpz_t()) != 0 && mpz_perfect_square_p(d.get_mpz_t()) != 0) {
      mpz_class rn;
      mpz_class rd;
      mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
      mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
      mpq_class m(rn, rd);
      m.canonicalize();
      std::array<mpq_class, 4> c{0, 0, 0, 0};
      c[static_cast<std::size_t>(i)] = m;
      return QFElement(c[0], c[1], c[2], c[3]);
    }
  }
  return std::nullopt;
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  ParsedValue run() {
    ParsedValue v = expr();
    skip_ws();
    if (pos_ != s_.size()) {
      fail("trailing characters");
    }
    v.text = std::string(s_);
    return v;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("cannot parse value '" + std::string(s_) + "': " + what);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])) != 0) {
      ++pos_;
    }
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static ParsedValue combine(const ParsedValue& a, const ParsedValue& b, char op) {
    ParsedValue r;
    switch (op) {
      case '+':
        r.value = a.value + b.value;
        break;
      case '-':
        r.value = a.value - b.value;
        break;
      case '*':
        r.value = a.value * b.value;
        break;
      default:
        r.value = a.value / b.value;
        break;
    }
    if (a.exact && b.exact) {
      switch (op) {
        case '+':
          r.exact = *a.exact + *b.exact;
          break;
        case '-':
          r.exact = *a.exact - *b.exact;
          break;
        case '*':
          r.exact = *a.exact * *b.exact;
          break;
        default:
          r.exact = *a.exact / *b.exact;
          break;
      }
      const long double sq[4] = {1.0L, std::sqrt(2.0L), std::sqrt(5.0L), std::sqrt(10.0L)};
      long double v = 0.0L;
      for (int i = 0; i < 4; ++i) {
        v += static_cast<long double>(r.exact->coeff(i).get_d()) * sq[i];
      }
      r.value = v;
    }
    return r;
  }

  ParsedValue expr() {
    ParsedValue v = term();
    for (;;) {
      if (eat('+')) {
        v = combine(v, term(), '+');
      } else if (eat('-')) {
        v = combine(v, term(), '-');
      } else {
        return v;
      }
    }
  }

  ParsedValue term() {
    ParsedValue v = factor();
    for (;;) {
      if (eat('*')) {
        v = combine(v, factor(), '*');
      } else if (eat('/')) {
        ParsedValue d = factor();
        if ((d.exact && d.exact->is_zero()) || d.value == 0.0L) {
          fail("division by zero");
        }
        v = combine(v, d, '/');
      } else {
        return v;
      }
    }
  }

  ParsedValue named(const std::string& name) {
    ParsedValue v;
    if (name == "sqrt2") {
      v.exact = QFElement::sqrt2();
    } else if (name == "sqrt5") {
      v.exact = QFElement::sqrt5();
    } else if (name == "sqrt10") {
      v.exact = QFElement::sqrt10();
    } else if (name == "r") {
      v.exact = QFElement::golden_r();
    } else if (name == "s") {
      v.exact = QFElement::golden_s();
    } else if (name == "sqrt") {
      if (!eat('(')) {
        fail("expected '(' after sqrt");
      }
      ParsedValue inner = expr();
      if (!eat(')')) {
        fail("expected ')'");
      }
      if (inner.value < 0.0L && !(inner.exact && inner.exact->is_zero())) {
        fail("square root of a negative number");
      }
      if (inner.exact && inner.exact->is_rational()) {
        if (auto e = exact_sqrt(inner.exact->coeff(0))) {
          v.exact = e;
          return combine(v, ParsedValue{QFElement(1), 1.0L, {}}, '*');
        }
      }
      v.value = std::sqrt(std::max(inner.value, 0.0L));
      return v;
    } else {
      fail("unknown name '" + name + "'");
    }
    return combine(v, ParsedValue{QFElement(1), 1.0L, {}}, '*');
  }

  ParsedValue number() {
    const std::size_t start = pos_;
    bool has_point = false;
    bool has_exp = false;
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
        ++pos_;
      } else if (c == '.' && !has_point && !has_exp) {
        has_point = true;
        ++pos_;
      } else if ((c == 'e' || c == 'E') && !has_exp && pos_ > start) {
        has_exp = true;
        ++pos_;
        if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
          ++pos_;
        }
      } else {
        break;
      }
    }
    const std::string tok(s_.substr(start, pos_ - start));
    ParsedValue v;
    if (has_point || has_exp) {
      v.value = std::stold(tok);
    } else {
      v.exact = QFElement(mpq_class(mpz_class(tok)));
      v.value = std::stold(tok);
    }
    return v;
  }

  ParsedValue factor() {
    skip_ws();
    if (eat('-')) {
      ParsedValue v = factor();
      return combine(ParsedValue{QFElement(0), 0.0L, {}}, v, '-');
    }
    if (eat('+')) {
      return factor();
    }
    if (eat('(')) {
      ParsedValue v = expr();
      if (!eat(')')) {
        fail("expected ')'");
      }
      return v;
    }
    skip_ws();
    if (pos_ >= s_.size()) {
      fail("unexpected end");
    }
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) != 0 || c == '.') {
      return number();
    }
    if (std::isalpha(static_cast<unsigned char>(c)) != 0) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_])) != 0) {
        ++pos_;
      }
      return named(std::string(s_.substr(start, pos_ - start)));
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

ParsedValue parse_value(std::string_view text) { return Parser(text).run(); }

}  // namespace su2twist
