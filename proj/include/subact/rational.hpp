#pragma once

#include <boost/rational.hpp>

#include <charconv>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

#include "subact/errors.hpp"

namespace subact {

/// Exact rational used for every threshold, ratio and function value.
using Rational = boost::rational<std::int64_t>;

/// Parses "p/q" or "p". Decimal notation is rejected so that thresholds
/// stay exact.
inline Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view part) {
    std::int64_t v = 0;
    if (part.empty()) throw ValidationError("malformed rational '" + std::string(text) + "'");
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc{} || ptr != part.data() + part.size())
      throw ValidationError("malformed rational '" + std::string(text) +
                            "' (expected \"p/q\" with integer p, q)");
    return v;
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  std::int64_t den = parse_int(text.substr(slash + 1));
  if (den == 0) throw ValidationError("zero denominator in '" + std::string(text) + "'");
  return Rational(parse_int(text.substr(0, slash)), den);
}

/// Always "p/q", including integers ("2/1").
inline std::string to_string(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline bool is_integer(const Rational& r) { return r.denominator() == 1; }

}  // namespace subact
