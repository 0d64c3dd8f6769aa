#pragma once

// Polynomial text grammar.
//
//   form   := sign? term (sign term)*
//   term   := factor ('*' factor)*
//   factor := integer ('/' integer)? | 'i' | identifier ('^' integer)?
//
// `i` is the imaginary unit and may not be used as a variable name.
// Whitespace is ignored everywhere. Printing is Form::to_string(), which
// this parser inverts exactly.

#include <cctype>
#include <string>
#include <string_view>

#include "cremona/error.hpp"
#include "cremona/form.hpp"

namespace cremona {

namespace detail {

class FormParser {
 public:
  FormParser(std::string_view text, const Variables& vars) : text_(text), vars_(vars) {
    for (const auto& n : vars.names()) {
      if (n == "i") throw InputError("'i' is reserved for the imaginary unit");
    }
  }

  Form parse() {
    Form out(vars_);
    skip_ws();
    if (at_end()) fail("empty polynomial");
    bool first = true;
    while (true) {
      skip_ws();
      bool negative = false;
      if (peek() == '+' || peek() == '-') {
        negative = peek() == '-';
        advance();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      Form t = parse_term();
      out += negative ? -t : t;
      first = false;
      skip_ws();
      if (at_end()) break;
    }
    return out;
  }

 private:
  Form parse_term() {
    Scalar coef(1);
    Monomial mono(vars_.size());
    parse_factor(coef, mono);
    while (true) {
      skip_ws();
      if (peek() != '*') break;
      advance();
      parse_factor(coef, mono);
    }
    return Form::monomial(vars_, mono, coef);
  }

  void parse_factor(Scalar& coef, Monomial& mono) {
    skip_ws();
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = digits();
      skip_ws();
      std::string den = "1";
      if (peek() == '/') {
        advance();
        skip_ws();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected denominator");
        den = digits();
      }
      if (mpz_class(den) == 0) fail("zero denominator");
      Rational q(num + "/" + den);
      q.canonicalize();
      coef *= Scalar(q);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      std::string name;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
        name += peek();
        advance();
      }
      if (name == "i") {
        coef *= Scalar::imaginary_unit();
        return;
      }
      auto idx = vars_.index_of(name);
      if (!idx) fail_at(start, "unknown variable '" + name + "'");
      Exponent e = 1;
      skip_ws();
      if (peek() == '^') {
        advance();
        skip_ws();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected exponent");
        std::string d = digits();
        if (d.size() > 6) fail("exponent too large");
        e = static_cast<Exponent>(std::stoul(d));
      }
      mono.set(*idx, mono[*idx] + e);
      return;
    }
    if (at_end()) fail("unexpected end of input");
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string digits() {
    std::string s;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      s += peek();
      advance();
    }
    return s;
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  void advance() { ++pos_; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const { fail_at(pos_, msg); }
  [[noreturn]] void fail_at(std::size_t at, const std::string& msg) const {
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k < at && k < text_.size(); ++k) {
      if (text_[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(msg, line, col);
  }

  std::string_view text_;
  const Variables& vars_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Form parse_form(std::string_view text, const Variables& vars) { return detail::FormParser(text, vars).parse(); }

inline Scalar parse_scalar(std::string_view text) {
  static const Variables none;
  return parse_form(text, none).constant_value();
}

inline std::string scalar_text(const Scalar& s) { return s.to_string(); }

}  // namespace cremona
