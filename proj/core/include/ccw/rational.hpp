#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace boost {

// Under C++20 rewritten comparisons the mixed integer overloads of
// boost::rational call each other forever; these exact matches win instead.
#define CCW_RATIONAL_EQ(T)                                                                     \
  inline constexpr bool operator==(const rational<std::int64_t>& a, T b) {                     \
    return a.denominator() == 1 && a.numerator() == static_cast<std::int64_t>(b);              \
  }                                                                                            \
  inline constexpr bool operator==(T b, const rational<std::int64_t>& a) { return a == b; }    \
  inline constexpr bool operator!=(const rational<std::int64_t>& a, T b) { return !(a == b); } \
  inline constexpr bool operator!=(T b, const rational<std::int64_t>& a) { return !(a == b); }
CCW_RATIONAL_EQ(int)
CCW_RATIONAL_EQ(long)
CCW_RATIONAL_EQ(long long)
#undef CCW_RATIONAL_EQ

}  // namespace boost

namespace ccw {

/// Exact rational used for every metric value, radius and weight in the library.
using Rational = boost::rational<std::int64_t>;

/// Canonical text form: "p" for integers, "p/q" otherwise (lowest terms, q > 0).
std::string to_string(const Rational& r);

/// Accepts "p", "-p" and "p/q". Throws ccw::Error (Schema) on malformed input.
Rational parse_rational(std::string_view text);

inline Rational abs(const Rational& r) { return r < 0 ? -r : r; }

/// Smallest integer n with n >= r.
std::int64_t ceil(const Rational& r);

/// Largest integer n with n <= r.
std::int64_t floor(const Rational& r);

}  // namespace ccw
