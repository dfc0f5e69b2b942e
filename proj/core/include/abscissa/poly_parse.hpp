#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "abscissa/multi_poly.hpp"

namespace abscissa {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Parses a polynomial written as a sum of terms such as
/// `3/2*q1^2*s - 0.5*q2 + (x1 - x2)*y2`. Constants may be integers, decimals or
/// rationals `p/r`; `+ - * ^` and parentheses are accepted, division only by
/// constants. Whitespace is ignored. Identifiers must be in `vars` (after
/// applying `aliases`).
MultiPoly parse_poly(std::string_view text, const std::vector<std::string>& vars,
                     const std::map<std::string, std::string>& aliases = {});

}  // namespace abscissa
