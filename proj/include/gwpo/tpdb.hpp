#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "gwpo/term.hpp"

namespace gwpo {

class ParseError : public std::runtime_error {
 public:
  enum class Kind { syntax, arity_mismatch, unsupported_section };

  ParseError(Kind kind, std::size_t line, std::size_t column, const std::string& msg)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        kind_(kind),
        line_(line),
        column_(column) {}

  Kind kind() const { return kind_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  Kind kind_;
  std::size_t line_;
  std::size_t column_;
};

/// Parses the old-style TPDB format: `(VAR ...)`, `(RULES ...)` and
/// optional `(COMMENT ...)` sections. Identifiers not listed in VAR are
/// function symbols whose arity is fixed by their first occurrence.
Trs parse_trs(std::string_view text);

/// Prints `trs` in the same format; parse_trs(print_trs(t)) == t.
std::string print_trs(const Trs& trs);

}  // namespace gwpo
