#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace cfx {

/// Exact rational with arbitrary-precision integer parts. Always stored in
/// lowest terms with a positive denominator; comparisons and arithmetic are
/// exact. No floating point appears anywhere on the decision path.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// num/den with any sign combination; throws std::invalid_argument on a zero
/// denominator.
Rational make_rational(BigInt num, BigInt den);

/// Accepts "num/den" or a bare integer (optional leading sign). Anything
/// else — decimals in particular — is a ParseError.
Rational parse_rational(std::string_view text);

/// Canonical form: "num/den" in lowest terms, or just "num" when den == 1.
std::string to_string(const Rational& r);

inline bool in_open_unit_interval(const Rational& r) { return r > 0 && r < 1; }

} // namespace cfx
