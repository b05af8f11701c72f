#ifndef PLANTED_NUMERIC_HPP
#define PLANTED_NUMERIC_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace planted {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Natural log of a positive big integer, in extended precision.
long double log_big(const BigInt& x);

/// log(num/den) for a positive rational.
long double log_rational(const Rational& x);

long double to_long_double(const Rational& x);
long double to_long_double(const BigInt& x);

/// (n)_k = n (n-1) ... (n-k+1); zero when k > n.
BigInt falling_factorial(const BigInt& n, std::uint64_t k);
BigInt factorial(std::uint64_t k);
BigInt binomial(const BigInt& n, std::uint64_t k);

/// log (n)_k computed term by term as log n + log1p(-i/n), so that n may be
/// astronomically large without materializing the product.
long double log_falling_factorial(const BigInt& n, std::uint64_t k);

/// Smallest integer >= x.
BigInt ceil_rational(const Rational& x);

/// Parses "3", "-2/7", "0.125", "1e-3" into an exact rational.
Rational parse_rational(std::string_view text);

/// Parses a decimal (optionally scientific, e.g. "1e6") non-negative integer.
BigInt parse_big_integer(std::string_view text);

/// "num/den" with den omitted when 1.
std::string format_rational(const Rational& x);

/// Shortest decimal that round-trips through double.
std::string format_double(double x);

}  // namespace planted

#endif  // PLANTED_NUMERIC_HPP
