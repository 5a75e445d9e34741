#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace sandkit {

// Exact rational scalar used for edge weights, capacities and costs.
// Arbitrary precision so cut/cost arithmetic never overflows.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Accepts "3", "-3", "1.25" and "5/4". Throws std::invalid_argument on
// anything else (including division by zero).
Rat parse_rational(std::string_view text);

// Canonical form: plain integer when the denominator is 1, "p/q" otherwise.
// parse_rational(rat_to_string(x)) == x for every x.
std::string rat_to_string(const Rat& x);

// Display form: exact decimal when the denominator is 2^a*5^b (e.g. "32.8"),
// canonical form otherwise.
std::string rat_to_display(const Rat& x);

double rat_to_double(const Rat& x);

bool rat_is_integer(const Rat& x);

// Nearest rational with denominator <= max_den whose distance to x is below
// tol, found by continued fractions; falls back to the exact dyadic value of
// x when no small-denominator rational is that close.
Rat rat_from_double(double x, std::int64_t max_den = 1000000, double tol = 1e-9);

// The exact dyadic rational equal to the double x.
Rat rat_exact_from_double(double x);

}  // namespace sandkit
