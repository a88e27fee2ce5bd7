#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace ncs {

// Exact arithmetic throughout the solver core. Solvability of a sync round is
// a rank question, so floating point is not an option in exact mode.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Accepts plain integers ("-12"), finite decimals ("3.25"), and fractions
// ("-1/3"). Returns nullopt on anything else.
std::optional<Rational> parse_rational(const std::string& text);

// Finite decimal when the reduced denominator is of the form 2^a*5^b,
// otherwise "p/q". parse_rational round-trips either form.
std::string format_rational(const Rational& value);

}  // namespace ncs
