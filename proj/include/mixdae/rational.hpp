#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "mixdae/error.hpp"

namespace mixdae {

// Exact rational scalar. Always normalized: lowest terms, positive denominator.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

// Parses "num", "-num" or "num/den". Rejects zero denominators and garbage.
Rational parse_rational(const std::string &text);

// Canonical form: "num" when the denominator is 1, otherwise "num/den".
std::string rational_to_string(const Rational &value);

} // namespace mixdae
