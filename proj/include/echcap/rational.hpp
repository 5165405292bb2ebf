#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace echcap {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Rat make_rat(long long num, long long den = 1) {
  return Rat(BigInt(num), BigInt(den));
}

double rat_to_double(const Rat& q);

// Accepts "p", "-p/q" and decimal strings like "1.25".
Rat parse_rat(const std::string& text);

// Canonical "p/q" (or "p" when q == 1); used verbatim in CSV output.
std::string format_rat(const Rat& q);

// Exact floor/ceil of p/q as big integers.
BigInt rat_floor(const Rat& q);
BigInt rat_ceil(const Rat& q);

}  // namespace echcap
