#include "ccw/rational.hpp"

#include "ccw/error.hpp"

#include <charconv>

namespace ccw {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::SizeCap: return "size-cap";
    case ErrorKind::Schema: return "schema";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::InsufficientDomain: return "insufficient-domain";
    case ErrorKind::EmptyInnerWindow: return "empty-inner-window";
    case ErrorKind::EmptyCover: return "empty-cover";
  }
  return "unknown";
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  auto first = text.data();
  auto last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last) {
    fail(ErrorKind::Schema, "malformed rational '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text, text));
  auto num = parse_int(text.substr(0, slash), text);
  auto den = parse_int(text.substr(slash + 1), text);
  if (den == 0) fail(ErrorKind::Schema, "zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::int64_t floor(const Rational& r) {
  auto q = r.numerator() / r.denominator();
  if (r.numerator() < 0 && q * r.denominator() != r.numerator()) --q;
  return q;
}

std::int64_t ceil(const Rational& r) {
  auto f = floor(r);
  return Rational(f) == r ? f : f + 1;
}

}  // namespace ccw
