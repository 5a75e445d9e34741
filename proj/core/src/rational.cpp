#include "sandkit/rational.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace sandkit {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace

Rat parse_rational(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    negative = s[0] == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) throw std::invalid_argument("empty number: '" + std::string(text) + "'");

  Rat value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw std::invalid_argument("bad fraction: '" + std::string(text) + "'");
    BigInt p{std::string(num)};
    BigInt q{std::string(den)};
    if (q == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    value = Rat(p, q);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot), frac = s.substr(dot + 1);
    if (whole.empty()) whole = "0";
    if (!all_digits(whole) || !all_digits(frac))
      throw std::invalid_argument("bad decimal: '" + std::string(text) + "'");
    BigInt scale = 1;
    for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
    BigInt p = BigInt(std::string(whole)) * scale;
    if (!frac.empty()) p += BigInt(std::string(frac));
    value = Rat(p, scale);
  } else {
    if (!all_digits(s)) throw std::invalid_argument("bad number: '" + std::string(text) + "'");
    value = Rat(BigInt(std::string(s)));
  }
  return negative ? Rat(-value) : value;
}

std::string rat_to_string(const Rat& x) {
  std::string out = numerator(x).str();
  if (denominator(x) != 1) {
    out += '/';
    out += denominator(x).str();
  }
  return out;
}

std::string rat_to_display(const Rat& x) {
  BigInt den = denominator(x);
  int twos = 0, fives = 0;
  BigInt d = den;
  while (d % 2 == 0) { d /= 2; ++twos; }
  while (d % 5 == 0) { d /= 5; ++fives; }
  if (d != 1 || twos + fives > 30) return rat_to_string(x);
  if (den == 1) return numerator(x).str();

  int digits = twos > fives ? twos : fives;
  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  BigInt num = numerator(x) * (scale / den);
  bool neg = num < 0;
  if (neg) num = -num;
  std::string raw = num.str();
  if ((int)raw.size() <= digits) raw.insert(0, digits + 1 - raw.size(), '0');
  raw.insert(raw.size() - digits, 1, '.');
  while (raw.back() == '0') raw.pop_back();
  if (raw.back() == '.') raw.pop_back();
  return neg ? "-" + raw : raw;
}

double rat_to_double(const Rat& x) { return x.convert_to<double>(); }

bool rat_is_integer(const Rat& x) { return denominator(x) == 1; }

Rat rat_from_double(double x, std::int64_t max_den, double tol) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite value");
  // Continued-fraction convergents of |x|.
  double target = std::fabs(x);
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = target;
  for (int iter = 0; iter < 64; ++iter) {
    double floor_part = std::floor(frac);
    if (floor_part > 9e17) break;
    auto a = static_cast<std::int64_t>(floor_part);
    if (p1 != 0 && a != 0 && (p1 > (INT64_MAX - p0) / a || q1 > (INT64_MAX - q0) / a)) break;
    std::int64_t p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    double approx = static_cast<double>(p1) / static_cast<double>(q1);
    if (std::fabs(approx - target) <= tol) {
      Rat r(p1, q1);
      return x < 0 ? Rat(-r) : r;
    }
    double rem = frac - floor_part;
    if (rem < 1e-15) break;
    frac = 1.0 / rem;
  }
  return rat_exact_from_double(x);
}

Rat rat_exact_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite value");
  int exp = 0;
  double mant = std::frexp(x, &exp);
  std::int64_t m = static_cast<std::int64_t>(std::ldexp(mant, 53));
  exp -= 53;
  Rat r(m);
  BigInt two = 1;
  if (exp >= 0) {
    for (int i = 0; i < exp; ++i) two *= 2;
    r *= Rat(two);
  } else {
    for (int i = 0; i < -exp; ++i) two *= 2;
    r /= Rat(two);
  }
  return r;
}

}  // namespace sandkit
