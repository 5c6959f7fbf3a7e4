// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace friedman {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
__extension__ using Int128 = __int128;
__extension__ using UInt128 = unsigned __int128;

BigInt to_bigint(Int128 value);
Rational make_rational(Int128 num, Int128 den);
Rational make_rational(const BigInt& num, const BigInt& den);

//! "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& value);
double to_double(const Rational& value);

}  // namespace friedman
