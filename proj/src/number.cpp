#include "symba/number.hpp"

#include <cstddef>

namespace symba {
namespace {

using Integer = boost::multiprecision::cpp_int;

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

Integer pow10(std::size_t n) {
  Integer r = 1;
  for (std::size_t i = 0; i < n; ++i) r *= 10;
  return r;
}

}  // namespace

std::optional<Rational> parse_number(std::string_view text) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (text.empty()) return std::nullopt;

  auto finish = [&](Rational value) -> std::optional<Rational> {
    return negative ? -value : value;
  };

  if (auto r = text.find('r'); r != std::string_view::npos) {
    auto num = text.substr(0, r);
    auto den = text.substr(r + 1);
    if (!all_digits(num) || !all_digits(den)) return std::nullopt;
    Integer d{std::string(den)};
    if (d == 0) return std::nullopt;
    return finish(Rational(Integer{std::string(num)}, d));
  }

  auto dot = text.find('.');
  if (dot == std::string_view::npos) {
    if (!all_digits(text)) return std::nullopt;
    return finish(Rational(Integer(std::string(text))));
  }
  auto whole = text.substr(0, dot);
  auto frac = text.substr(dot + 1);
  if (!all_digits(whole) || !all_digits(frac)) return std::nullopt;
  Integer scaled = Integer(std::string(whole)) * pow10(frac.size()) +
                   Integer(std::string(frac));
  return finish(Rational(scaled, pow10(frac.size())));
}

std::string format_number(const Rational& value) {
  Integer num = boost::multiprecision::numerator(value);
  Integer den = boost::multiprecision::denominator(value);
  std::string sign = num < 0 ? "-" : "";
  if (num < 0) num = -num;

  // A rational has a terminating decimal expansion iff the reduced
  // denominator is of the form 2^a * 5^b.
  Integer d = den;
  std::size_t twos = 0;
  std::size_t fives = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++twos;
  }
  while (d % 5 == 0) {
    d /= 5;
    ++fives;
  }
  if (d != 1) return sign + num.str() + "r" + den.str();

  std::size_t shift = twos > fives ? twos : fives;
  Integer scaled = num * pow10(shift) / den;
  std::string digits = scaled.str();
  if (shift == 0) return sign + digits;

  if (digits.size() <= shift) digits.insert(0, shift + 1 - digits.size(), '0');
  std::string whole = digits.substr(0, digits.size() - shift);
  std::string frac = digits.substr(digits.size() - shift);
  while (!frac.empty() && frac.back() == '0') frac.pop_back();
  if (frac.empty()) return sign + whole;
  return sign + whole + "." + frac;
}

}  // namespace symba
