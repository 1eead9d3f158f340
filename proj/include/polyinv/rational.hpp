#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace polyinv {

// Always canonical: mpq_class keeps lowest terms after every arithmetic op.
using Rational = mpq_class;
using Integer = mpz_class;

// Accepts "12", "-3", "5/12", "-5/12". Throws Error on malformed input or zero denominator.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace polyinv
