#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace sparsecsp {

using Rational = boost::rational<std::int64_t>;
// Used where exact values can exceed 64 bits (deviation ratios).
using BigRational = boost::multiprecision::cpp_rational;

// Accepts "p/q", "p" and finite decimals such as "0.25".
Rational parse_rational(std::string_view text);
std::string to_string(const Rational &q);
double to_double(const Rational &q);
BigRational to_big(const Rational &q);
std::string to_string(const BigRational &q);

} // namespace sparsecsp
