#pragma once

#include "polyinv/polynomial.hpp"

#include <string_view>

namespace polyinv {

// Grammar: expr := term (('+'|'-') term)*; term := unary (('*'|'/') unary)*;
// unary := ('+'|'-') unary | power; power := atom ('^' integer)?;
// atom := integer | name | '(' expr ')'. Division only by nonzero constants.
// `line` is used in error positions when parsing a line of a larger file.
Polynomial parse_poly(std::string_view text, const Ctx& ctx, std::size_t line = 1, std::size_t column_offset = 0);

}  // namespace polyinv
