#pragma once

#include <stdexcept>
#include <string>
#include "dnk/expr.hpp"

namespace dnk {

struct ParseError : std::runtime_error {
  size_t offset;
  ParseError(const std::string& msg, size_t off)
      : std::runtime_error(msg + " at byte " + std::to_string(off)), offset(off) {}
};

// Infix expression parser for the grammar in docs/grammar.md.
// Round-trips with to_string on canonical forms.
EP parse(const std::string& text);

} // namespace dnk
