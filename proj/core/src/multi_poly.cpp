#include "abscissa/multi_poly.hpp"

#include <cctype>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "abscissa/poly_parse.hpp"

namespace abscissa {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty number");
  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    Rational num = parse_rational(std::string_view(s).substr(0, slash));
    Rational den = parse_rational(std::string_view(s).substr(slash + 1));
    if (sgn(den) == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    Rational r = num / den;
    r.canonicalize();
    return r;
  }
  std::size_t pos = 0;
  bool negative = false;
  if (s[pos] == '+' || s[pos] == '-') {
    negative = s[pos] == '-';
    ++pos;
  }
  mpz_class mantissa = 0;
  long exponent10 = 0;
  bool any_digit = false;
  bool after_point = false;
  for (; pos < s.size(); ++pos) {
    const char c = s[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mantissa = mantissa * 10 + (c - '0');
      if (after_point) --exponent10;
      any_digit = true;
    } else if (c == '.' && !after_point) {
      after_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) throw std::invalid_argument("malformed number '" + s + "'");
  if (pos < s.size()) {
    if (s[pos] != 'e' && s[pos] != 'E') {
      throw std::invalid_argument("malformed number '" + s + "'");
    }
    const std::string tail = s.substr(pos + 1);
    std::size_t used = 0;
    long e = 0;
    try {
      e = std::stol(tail, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed exponent in '" + s + "'");
    }
    if (used != tail.size()) throw std::invalid_argument("malformed number '" + s + "'");
    exponent10 += e;
  }
  Rational r(mantissa);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent10)));
  if (exponent10 >= 0) {
    r *= scale;
  } else {
    r /= scale;
  }
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

NumericPoly to_numeric(const MultiPoly& p) {
  NumericPoly r(p.vars());
  for (const auto& [e, c] : p.terms()) r.add_term(e, c.get_d());
  return r;
}

MultiPoly to_exact(const NumericPoly& p) {
  MultiPoly r(p.vars());
  for (const auto& [e, c] : p.terms()) {
    if (!std::isfinite(c)) throw std::invalid_argument("non-finite coefficient");
    r.add_term(e, Rational(c));
  }
  return r;
}

namespace {

template <typename Coeff>
std::string format_poly(const BasicMultiPoly<Coeff>& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  if constexpr (std::is_same_v<Coeff, double>) {
    os << std::setprecision(std::numeric_limits<double>::max_digits10);
  }
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    const bool negative = c < 0;
    Coeff mag = negative ? Coeff(-c) : c;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    const bool is_const = total_degree(e) == 0;
    const bool unit = mag == Coeff(1);
    if (!unit || is_const) {
      if constexpr (std::is_same_v<Coeff, double>) {
        os << mag;
      } else {
        os << mag.get_str();
      }
    }
    bool need_star = !unit || is_const;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (need_star) os << "*";
      os << p.vars()[i];
      if (e[i] > 1) os << "^" << e[i];
      need_star = true;
    }
  }
  return os.str();
}

}  // namespace

std::string to_string(const MultiPoly& p) { return format_poly(p); }
std::string to_string(const NumericPoly& p) { return format_poly(p); }

std::vector<std::string> param_names(int n) {
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back("q" + std::to_string(i));
  return names;
}

// ---------------------------------------------------------------------------
// Recursive-descent parser.

namespace {

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& vars,
         const std::map<std::string, std::string>& aliases)
      : text_(text), vars_(vars), aliases_(aliases) {}

  MultiPoly parse() {
    skip_ws();
    if (at_end()) throw ParseError("empty polynomial", pos_);
    MultiPoly p = expr();
    skip_ws();
    if (!at_end()) throw ParseError(std::string("unexpected character '") + peek() + "'", pos_);
    return p;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  MultiPoly expr() {
    MultiPoly acc = term();
    for (;;) {
      skip_ws();
      const char c = peek();
      if (c != '+' && c != '-') return acc;
      ++pos_;
      MultiPoly rhs = term();
      if (c == '+') {
        acc += rhs;
      } else {
        acc -= rhs;
      }
    }
  }

  MultiPoly term() {
    MultiPoly acc = unary();
    for (;;) {
      skip_ws();
      const char c = peek();
      if (c != '*' && c != '/') return acc;
      const std::size_t at = pos_;
      ++pos_;
      MultiPoly rhs = unary();
      if (c == '*') {
        acc = acc * rhs;
      } else {
        if (rhs.degree() != 0 || rhs.is_zero()) {
          throw ParseError("division only by nonzero constants", at);
        }
        Rational inv = 1 / rhs.coeff(Exponent(vars_.size(), 0));
        acc = acc.scaled(inv);
      }
    }
  }

  MultiPoly unary() {
    skip_ws();
    if (peek() == '-') {
      ++pos_;
      return -unary();
    }
    if (peek() == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  MultiPoly power() {
    MultiPoly base = primary();
    skip_ws();
    if (peek() != '^') return base;
    ++pos_;
    skip_ws();
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) throw ParseError("expected integer exponent", pos_);
    const int k = std::stoi(std::string(text_.substr(start, pos_ - start)));
    return base.pow(k);
  }

  MultiPoly primary() {
    skip_ws();
    if (at_end()) throw ParseError("unexpected end of input", pos_);
    const char c = peek();
    if (c == '(') {
      ++pos_;
      MultiPoly inner = expr();
      skip_ws();
      if (peek() != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const std::size_t start = pos_;
      while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.')) {
        ++pos_;
      }
      if (!at_end() && (peek() == 'e' || peek() == 'E')) {
        std::size_t look = pos_ + 1;
        if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
        if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
          pos_ = look;
          while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        }
      }
      Rational value;
      try {
        value = parse_rational(text_.substr(start, pos_ - start));
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), start);
      }
      return MultiPoly::constant(vars_, value);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (!at_end() &&
             (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
        ++pos_;
      }
      std::string name(text_.substr(start, pos_ - start));
      if (auto it = aliases_.find(name); it != aliases_.end()) name = it->second;
      if (std::find(vars_.begin(), vars_.end(), name) == vars_.end()) {
        throw ParseError("unknown indeterminate '" + name + "'", start);
      }
      return MultiPoly::variable(vars_, name);
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  std::string_view text_;
  const std::vector<std::string>& vars_;
  const std::map<std::string, std::string>& aliases_;
  std::size_t pos_ = 0;
};

}  // namespace

MultiPoly parse_poly(std::string_view text, const std::vector<std::string>& vars,
                     const std::map<std::string, std::string>& aliases) {
  return Parser(text, vars, aliases).parse();
}

}  // namespace abscissa
