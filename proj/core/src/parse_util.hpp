#pragma once

#include <cctype>
#include <string>

#include "eulerchar/arith.hpp"

namespace eulerchar::detail {

// Minimal cursor for the hand-rolled expression grammars.
struct Cursor {
  const std::string& s;
  size_t i = 0;

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eof() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
  bool eat(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw Error(Errc::ParseError,
                what + " at position " + std::to_string(i) + " in '" + s + "'");
  }
  Int integer() {
    skip_ws();
    size_t start = i;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    size_t digits = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == digits) fail("expected integer");
    return Int(s.substr(start, i - start));
  }
  // Exponent following '^', if present; defaults to 1.
  int exponent() {
    if (!eat('^')) return 1;
    Int e = integer();
    if (e < 0 || e > 1000) fail("exponent out of range");
    return e.convert_to<int>();
  }
};

}  // namespace eulerchar::detail
