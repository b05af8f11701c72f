#include "planted/numeric.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace planted {

long double log_big(const BigInt& x) {
  if (x <= 0) {
    throw std::domain_error("log of non-positive integer");
  }
  const std::size_t bits = boost::multiprecision::msb(x) + 1;
  if (bits <= 64) {
    return std::log(static_cast<long double>(x.convert_to<std::uint64_t>()));
  }
  // Keep the top 64 bits; the discarded tail perturbs the log by < 2^-63.
  const std::size_t shift = bits - 64;
  const BigInt top = x >> shift;
  const long double mantissa = static_cast<long double>(top.convert_to<std::uint64_t>());
  return std::log(mantissa) + static_cast<long double>(shift) * std::log(2.0L);
}

long double log_rational(const Rational& x) {
  return log_big(boost::multiprecision::numerator(x)) -
         log_big(boost::multiprecision::denominator(x));
}

long double to_long_double(const BigInt& x) {
  if (x == 0) return 0.0L;
  if (x < 0) return -to_long_double(BigInt(-x));
  return std::exp(log_big(x));
}

long double to_long_double(const Rational& x) {
  const BigInt& num = boost::multiprecision::numerator(x);
  const BigInt& den = boost::multiprecision::denominator(x);
  if (num == 0) return 0.0L;
  if (boost::multiprecision::msb(BigInt(abs(num))) < 60 &&
      boost::multiprecision::msb(den) < 60) {
    return static_cast<long double>(num.convert_to<std::int64_t>()) /
           static_cast<long double>(den.convert_to<std::int64_t>());
  }
  const long double magnitude = std::exp(log_big(BigInt(abs(num))) - log_big(den));
  return num < 0 ? -magnitude : magnitude;
}

BigInt falling_factorial(const BigInt& n, std::uint64_t k) {
  if (n < k) return 0;
  BigInt result = 1;
  for (std::uint64_t i = 0; i < k; ++i) result *= (n - i);
  return result;
}

BigInt factorial(std::uint64_t k) { return falling_factorial(BigInt(k), k); }

BigInt binomial(const BigInt& n, std::uint64_t k) {
  if (n < k || n < 0) return 0;
  return falling_factorial(n, k) / factorial(k);
}

long double log_falling_factorial(const BigInt& n, std::uint64_t k) {
  if (n < k) {
    return -std::numeric_limits<long double>::infinity();
  }
  if (n < BigInt(1) << 62) {
    const auto small = n.convert_to<std::uint64_t>();
    long double acc = 0.0L;
    for (std::uint64_t i = 0; i < k; ++i) {
      acc += std::log(static_cast<long double>(small - i));
    }
    return acc;
  }
  const long double log_n = log_big(n);
  const long double inv_n = std::exp(-log_n);
  long double acc = 0.0L;
  for (std::uint64_t i = 0; i < k; ++i) {
    acc += log_n + std::log1p(-static_cast<long double>(i) * inv_n);
  }
  return acc;
}

BigInt ceil_rational(const Rational& x) {
  const BigInt& num = boost::multiprecision::numerator(x);
  const BigInt& den = boost::multiprecision::denominator(x);
  BigInt q = num / den;  // truncates toward zero
  if (q * den != num && num > 0) q += 1;
  return q;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

BigInt pow10(std::uint64_t e) {
  BigInt r = 1;
  for (std::uint64_t i = 0; i < e; ++i) r *= 10;
  return r;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

Rational parse_decimal(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto pos = s.find_first_of("eE"); pos != std::string_view::npos) {
    std::string_view exp_text = s.substr(pos + 1);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    if (!all_digits(exp_text)) throw std::invalid_argument("bad exponent");
    exponent = std::stol(std::string(exp_text));
    if (exp_negative) exponent = -exponent;
    s = s.substr(0, pos);
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if (whole.empty() && frac.empty()) throw std::invalid_argument("bad number");
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac))) {
      throw std::invalid_argument("bad number");
    }
    digits = std::string(whole) + std::string(frac);
    exponent -= static_cast<long>(frac.size());
  } else {
    if (!all_digits(s)) throw std::invalid_argument("bad number");
    digits = std::string(s);
  }
  if (digits.empty()) digits = "0";
  if (std::labs(exponent) > 4096) throw std::invalid_argument("exponent out of range");
  Rational value{BigInt(digits)};
  if (exponent >= 0) {
    value *= pow10(static_cast<std::uint64_t>(exponent));
  } else {
    value /= pow10(static_cast<std::uint64_t>(-exponent));
  }
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw std::invalid_argument("empty number");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const Rational num = parse_decimal(trim(text.substr(0, slash)));
    const Rational den = parse_decimal(trim(text.substr(slash + 1)));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return num / den;
  }
  return parse_decimal(text);
}

BigInt parse_big_integer(std::string_view text) {
  const Rational r = parse_rational(text);
  if (boost::multiprecision::denominator(r) != 1 || r < 0) {
    throw std::invalid_argument("expected a non-negative integer: " + std::string(text));
  }
  return boost::multiprecision::numerator(r);
}

std::string format_rational(const Rational& x) {
  const BigInt& den = boost::multiprecision::denominator(x);
  if (den == 1) return boost::multiprecision::numerator(x).str();
  return boost::multiprecision::numerator(x).str() + "/" + den.str();
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

}  // namespace planted
