#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace flagbord {

// Exact rationals. mpq_class keeps values canonical after every arithmetic
// operation; values built from strings go through parse_rational.
using Rational = mpq_class;
using Integer = mpz_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

// Accepts "n" or "n/d" with an optional sign. Throws ValidationError.
Rational parse_rational(std::string_view text);

}  // namespace flagbord
