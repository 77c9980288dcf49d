#pragma once

#include <flagbord/poly.hpp>

#include <string_view>

namespace flagbord {

// Parses integers, rationals a/b, identifiers, + - * / ^ and parentheses,
// ignoring whitespace. Division is only allowed by nonzero constants and
// exponents must be non-negative integer literals. Identifiers must exist in
// `table`. Throws ValidationError with the offending position.
Polynomial parse_polynomial(std::string_view text, const TablePtr& table);

}  // namespace flagbord
