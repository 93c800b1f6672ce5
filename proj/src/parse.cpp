#include "mahler/parse.hpp"

#include <cctype>
#include <string>

#include "mahler/error.hpp"

namespace mahler {
namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  RatFun parse() {
    RatFun value = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return value;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw MahlerError(ErrorKind::ParseError,
                      what + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'",
                      static_cast<long>(pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RatFun expr() {
    RatFun acc = term();
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  RatFun term() {
    RatFun acc = unary();
    for (;;) {
      if (accept('*')) {
        acc *= unary();
      } else if (accept('/')) {
        RatFun d = unary();
        if (d.is_zero()) fail("division by zero");
        acc /= d;
      } else {
        return acc;
      }
    }
  }

  RatFun unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  RatFun power() {
    RatFun base = atom();
    if (!accept('^')) return base;
    bool negative = false;
    if (accept('-')) negative = true;
    skip_ws();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      fail("expected integer exponent");
    }
    long e = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      e = e * 10 + (text_[pos_++] - '0');
      if (e > 100000) fail("exponent too large");
    }
    if (negative) {
      if (base.is_zero()) fail("negative power of zero");
      base = base.inverse();
    }
    RatFun out(1);
    for (long k = 0; k < e; ++k) out *= base;
    return out;
  }

  RatFun atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      RatFun inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (c == 'z') {
      ++pos_;
      return RatFun::z();
    }
    if (c == 'i') {
      ++pos_;
      return RatFun(GaussianRational::imaginary_unit());
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      mpq_class value(mpz_class(std::string(text_.substr(start, pos_ - start))));
      if (pos_ < text_.size() && text_[pos_] == 'i') {
        ++pos_;
        return RatFun(GaussianRational(0, value));
      }
      return RatFun(GaussianRational(value));
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

RatFun parse_ratfun(std::string_view text) { return Parser(text).parse(); }

}  // namespace mahler
