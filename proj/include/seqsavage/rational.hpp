#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace seqsavage {

// All core arithmetic is exact. Floating point never enters any check or
// solver; rationals are kept in canonical form (coprime, positive
// denominator) by the underlying type.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Canonical wire form "numerator/denominator", e.g. "3/4", "-1/2", "0/1".
std::string to_fraction_string(const Rational& r);

// Accepts "p/q" or a bare integer "p". Throws std::invalid_argument on
// malformed input or a zero denominator.
Rational rational_from_string(const std::string& text);

}  // namespace seqsavage
