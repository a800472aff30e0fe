#include "jacobi_cli/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace jacobi::cli {
namespace {

// expr := term (('+'|'-') term)*; term := unary (('*'|'/') unary)*
class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  double parse() {
    const double v = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("bad number expression '" + std::string(s_) + "': " + why);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool keyword(std::string_view k) {
    skip();
    if (s_.substr(pos_, k.size()) != k) return false;
    pos_ += k.size();
    return true;
  }

  double expr() {
    double v = term();
    for (;;) {
      if (eat('+')) v += term();
      else if (eat('-')) v -= term();
      else return v;
    }
  }

  double term() {
    double v = unary();
    for (;;) {
      if (eat('*')) {
        v *= unary();
      } else if (eat('/')) {
        const double d = unary();
        if (d == 0.0) fail("division by zero");
        v /= d;
      } else {
        return v;
      }
    }
  }

  double unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return atom();
  }

  double atom() {
    if (eat('(')) {
      const double v = expr();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    if (keyword("pi")) return std::numbers::pi;
    if (keyword("sqrt")) {
      if (!eat('(')) fail("sqrt needs '('");
      const double v = expr();
      if (!eat(')')) fail("missing ')'");
      if (v < 0.0) fail("sqrt of a negative number");
      return std::sqrt(v);
    }
    skip();
    double v = 0.0;
    const char* first = s_.data() + pos_;
    const auto [ptr, ec] = std::from_chars(first, s_.data() + s_.size(), v);
    if (ec != std::errc() || ptr == first) fail("expected a number at offset " + std::to_string(pos_));
    pos_ += static_cast<std::size_t>(ptr - first);
    return v;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

double eval_number(std::string_view text) { return Parser(text).parse(); }

}  // namespace jacobi::cli
