#include "treetopo/rational.hpp"

#include <cstddef>
#include <stdexcept>

namespace treetopo {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

[[noreturn]] void bad_rational(std::string_view text) {
  throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
}

}  // namespace

Rat parse_rational(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) bad_rational(text);

  Rat value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad_rational(text);
    BigInt d{std::string(den)};
    if (d == 0) throw std::invalid_argument("rational with zero denominator: '" + std::string(text) + "'");
    value = Rat(BigInt{std::string(num)}, d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if (whole.empty() && frac.empty()) bad_rational(text);
    if (!whole.empty() && !all_digits(whole)) bad_rational(text);
    if (!frac.empty() && !all_digits(frac)) bad_rational(text);
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    BigInt whole_part = whole.empty() ? BigInt(0) : BigInt{std::string(whole)};
    BigInt frac_part = frac.empty() ? BigInt(0) : BigInt{std::string(frac)};
    value = Rat(whole_part * scale + frac_part, scale);
  } else {
    if (!all_digits(s)) bad_rational(text);
    value = Rat(BigInt{std::string(s)});
  }
  return negative ? Rat(-value) : value;
}

std::string format_rational(const Rat& value) {
  return value.str();
}

std::string format_decimal4(const Rat& value) {
  // Round value * 10^4 to the nearest integer, ties to even.
  const BigInt scale = 10000;
  BigInt num = numerator(value) * scale;
  BigInt den = denominator(value);  // canonical: always positive
  bool negative = num < 0;
  BigInt mag = negative ? BigInt(-num) : num;
  BigInt q = mag / den;
  BigInt r = mag % den;
  BigInt twice = r * 2;
  if (twice > den || (twice == den && (q % 2) != 0)) ++q;

  if (q == 0) negative = false;  // avoid "-0.0000"
  BigInt whole = q / scale;
  BigInt frac = q % scale;
  std::string digits = frac.str();
  std::string out = negative ? "-" : "";
  out += whole.str();
  out += '.';
  out += std::string(4 - digits.size(), '0');
  out += digits;
  return out;
}

}  // namespace treetopo
