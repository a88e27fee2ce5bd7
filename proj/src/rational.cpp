#include "ncs/rational.hpp"

#include <algorithm>
#include <cctype>

namespace ncs {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

BigInt pow10(std::size_t n) {
  BigInt p = 1;
  for (std::size_t i = 0; i < n; ++i) p *= 10;
  return p;
}

}  // namespace

std::optional<Rational> parse_rational(const std::string& text) {
  std::string s = text;
  // trim surrounding whitespace
  auto issp = [](unsigned char c) { return std::isspace(c); };
  while (!s.empty() && issp(s.front())) s.erase(s.begin());
  while (!s.empty() && issp(s.back())) s.pop_back();
  if (s.empty()) return std::nullopt;

  bool neg = false;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    s.erase(s.begin());
  }
  if (s.empty()) return std::nullopt;

  auto finish = [&](Rational r) {
    if (neg) r = -r;
    return std::optional<Rational>(std::move(r));
  };

  std::size_t slash = s.find('/');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return std::nullopt;
    BigInt d(den);
    if (d == 0) return std::nullopt;
    return finish(Rational(BigInt(num), d));
  }

  std::size_t dot = s.find('.');
  if (dot != std::string::npos) {
    std::string ip = s.substr(0, dot);
    std::string fp = s.substr(dot + 1);
    if (ip.empty() && fp.empty()) return std::nullopt;
    if (!ip.empty() && !all_digits(ip)) return std::nullopt;
    if (!fp.empty() && !all_digits(fp)) return std::nullopt;
    BigInt scale = pow10(fp.size());
    BigInt whole = ip.empty() ? BigInt(0) : BigInt(ip);
    BigInt frac = fp.empty() ? BigInt(0) : BigInt(fp);
    return finish(Rational(whole * scale + frac, scale));
  }

  if (!all_digits(s)) return std::nullopt;
  return finish(Rational(BigInt(s)));
}

std::string format_rational(const Rational& value) {
  BigInt num = boost::multiprecision::numerator(value);
  BigInt den = boost::multiprecision::denominator(value);
  bool neg = num < 0;
  if (neg) num = -num;

  // Count the 2s and 5s in the denominator; only those yield finite decimals.
  BigInt rest = den;
  unsigned twos = 0, fives = 0;
  while (rest % 2 == 0) {
    rest /= 2;
    ++twos;
  }
  while (rest % 5 == 0) {
    rest /= 5;
    ++fives;
  }

  std::string out;
  if (rest != 1) {
    out = num.str() + "/" + den.str();
  } else if (twos == 0 && fives == 0) {
    out = num.str();
  } else {
    unsigned digits = std::max(twos, fives);
    // Scale to an integer over 10^digits, then place the point.
    BigInt scaled = num;
    for (unsigned i = 0; i < digits - twos; ++i) scaled *= 2;
    for (unsigned i = 0; i < digits - fives; ++i) scaled *= 5;
    std::string s = scaled.str();
    if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
    // Drop trailing zeros in the fraction (value stays exact).
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
    out = s;
  }
  return neg ? "-" + out : out;
}

}  // namespace ncs
