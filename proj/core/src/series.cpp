#include "chowzero/series.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace chowzero {
namespace {

Polynomial multiply(const Polynomial& a, const Polynomial& b) {
  if (a.empty() || b.empty()) return {};
  Polynomial out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Polynomial add(const Polynomial& a, const Polynomial& b, int sign) {
  Polynomial out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += sign * b[i];
  return out;
}

RationalFunction combine(const RationalFunction& a, const RationalFunction& b, int sign) {
  return {add(multiply(a.numerator, b.denominator), multiply(b.numerator, a.denominator), sign),
          multiply(a.denominator, b.denominator)};
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  RationalFunction parse() {
    auto f = expression();
    skip();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument(what + " at offset " + std::to_string(pos_));
  }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  RationalFunction expression() {
    auto f = term();
    for (char c = peek(); c == '+' || c == '-'; c = peek()) {
      ++pos_;
      f = combine(f, term(), c == '+' ? 1 : -1);
    }
    return f;
  }

  RationalFunction term() {
    auto f = power();
    while (true) {
      char c = peek();
      if (c == '*' || c == '/') {
        ++pos_;
        auto g = power();
        if (c == '*') {
          f = {multiply(f.numerator, g.numerator), multiply(f.denominator, g.denominator)};
        } else {
          f = {multiply(f.numerator, g.denominator), multiply(f.denominator, g.numerator)};
        }
      } else if (c == '(' || c == 't' || std::isdigit(static_cast<unsigned char>(c))) {
        auto g = power();
        f = {multiply(f.numerator, g.numerator), multiply(f.denominator, g.denominator)};
      } else {
        return f;
      }
    }
  }

  RationalFunction power() {
    auto base = unary();
    if (peek() != '^') return base;
    ++pos_;
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected exponent");
    const int exponent = std::stoi(std::string(text_.substr(start, pos_ - start)));
    RationalFunction out{{Rational(1)}, {Rational(1)}};
    for (int i = 0; i < exponent; ++i) {
      out = {multiply(out.numerator, base.numerator), multiply(out.denominator, base.denominator)};
    }
    return out;
  }

  RationalFunction unary() {
    char c = peek();
    if (c == '-' || c == '+') {
      ++pos_;
      auto f = unary();
      if (c == '-') {
        for (auto& x : f.numerator) x = -x;
      }
      return f;
    }
    return primary();
  }

  RationalFunction primary() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      auto f = expression();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return f;
    }
    if (c == 't') {
      ++pos_;
      return {{Rational(0), Rational(1)}, {Rational(1)}};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return {{Rational(Integer(std::string(text_.substr(start, pos_ - start))))}, {Rational(1)}};
    }
    fail("expected a number, t or '('");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

RationalFunction parse_rational_function(std::string_view text) { return Parser(text).parse(); }

std::vector<Rational> expand_rational(const Polynomial& numer, const Polynomial& denom, int dmax) {
  if (denom.empty() || denom[0] == 0) {
    throw std::domain_error("denominator vanishes at t = 0");
  }
  std::vector<Rational> out;
  for (int k = 0; k <= dmax; ++k) {
    Rational acc = k < static_cast<int>(numer.size()) ? numer[k] : Rational(0);
    for (int j = 1; j <= k && j < static_cast<int>(denom.size()); ++j) acc -= denom[j] * out[k - j];
    out.push_back(acc / denom[0]);
  }
  return out;
}

std::vector<Rational> expand_rational(const RationalFunction& f, int dmax) {
  return expand_rational(f.numerator, f.denominator, dmax);
}

}  // namespace chowzero
