#include "cfx/rational.hpp"

#include "cfx/errors.hpp"

#include <cctype>
#include <stdexcept>

namespace cfx {

Rational make_rational(BigInt num, BigInt den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rational(num, den); // normalizes to lowest terms
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

} // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  std::string_view num_part = s;
  std::string_view den_part;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    num_part = s.substr(0, slash);
    den_part = s.substr(slash + 1);
    if (!all_digits(den_part))
      throw ParseError("malformed rational: \"" + std::string(text) + "\"");
  }
  if (!all_digits(num_part))
    throw ParseError("malformed rational: \"" + std::string(text) + "\"");

  BigInt num{std::string(num_part)};
  if (negative) num = -num;
  BigInt den = den_part.empty() ? BigInt(1) : BigInt{std::string(den_part)};
  if (den == 0)
    throw ParseError("malformed rational (zero denominator): \"" + std::string(text) + "\"");
  return Rational(num, den);
}

std::string to_string(const Rational& r) {
  return r.str(); // "num/den" in lowest terms, or "num" when den == 1
}

} // namespace cfx
