#pragma once

#include "detk/polynomial.hpp"

#include <string_view>

namespace detk {

// Recursive-descent parser for the polynomial grammar
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := base ('^' uint)?
//   base   := rational | var | '(' expr ')'
//   rational := uint ('/' uint)?
// Whitespace is ignored. Throws ParseError with the offending position,
// or for identifiers not in `vars`.
Polynomial parse_poly(std::string_view text, const VarList& vars);

} // namespace detk
