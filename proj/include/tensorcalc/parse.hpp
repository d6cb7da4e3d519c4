#pragma once

#include "tensorcalc/expr.hpp"

#include <stdexcept>
#include <string>

namespace tensorcalc::sym {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string &msg, std::size_t column)
        : std::runtime_error(msg + " at column " + std::to_string(column)), column_(column) {}
    std::size_t column() const { return column_; }

private:
    std::size_t column_;
};

// Parses and canonicalizes. Columns in errors are 1-based.
Expr parse(const std::string &text);

} // namespace tensorcalc::sym
