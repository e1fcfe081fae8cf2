#pragma once

// Exact rational and big-integer scalars shared by every exact layer.

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "rlab/errors.hpp"

namespace rlab {

using BigInt = boost::multiprecision::cpp_int;

/// Reduced fraction with positive denominator; normalization is maintained by
/// the backend after every operation.
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rational& r) { return denominator_of(r) == 1; }

inline Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  return Rational(num, den);
}

template <class Real>
Real to_real(const Rational& r) {
  return boost::multiprecision::numerator(r).template convert_to<Real>() /
         boost::multiprecision::denominator(r).template convert_to<Real>();
}

template <class Real>
Real to_real(const BigInt& n) {
  return n.template convert_to<Real>();
}

inline std::string to_string(const BigInt& n) { return n.str(); }

inline std::string to_string(const Rational& r) {
  if (is_integer(r)) return numerator_of(r).str();
  return numerator_of(r).str() + "/" + denominator_of(r).str();
}

/// Parses "[-]digits[/digits]" or a plain decimal like "-2.5".
inline Rational parse_rational(std::string_view text) {
  auto fail = [&] { throw ParseError("not a rational number: '" + std::string(text) + "'", 0); };
  if (text.empty()) fail();
  std::size_t i = 0;
  bool neg = false;
  if (text[0] == '-' || text[0] == '+') {
    neg = text[0] == '-';
    ++i;
  }
  auto digits = [&](std::size_t from, std::size_t to) {
    if (from >= to) fail();
    for (std::size_t j = from; j < to; ++j)
      if (!std::isdigit(static_cast<unsigned char>(text[j]))) fail();
    return BigInt(std::string(text.substr(from, to - from)));
  };
  Rational value;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt den = digits(slash + 1, text.size());
    if (den == 0) fail();
    value = Rational(digits(i, slash), den);
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    BigInt whole = dot > i ? digits(i, dot) : BigInt(0);
    std::size_t frac_len = text.size() - dot - 1;
    BigInt frac = frac_len ? digits(dot + 1, text.size()) : BigInt(0);
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac_len));
    value = Rational(whole * scale + frac, scale);
  } else {
    value = Rational(digits(i, text.size()));
  }
  return neg ? Rational(-value) : value;
}

inline BigInt gcd(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }
inline BigInt lcm(const BigInt& a, const BigInt& b) {
  if (a == 0 || b == 0) return 0;
  return boost::multiprecision::abs(a / gcd(a, b) * b);
}

/// p-adic valuation of a nonzero integer.
inline int valuation(BigInt n, const BigInt& p) {
  if (n == 0) throw DomainError("valuation of zero");
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

inline int valuation(const Rational& r, const BigInt& p) {
  return valuation(numerator_of(r), p) - valuation(denominator_of(r), p);
}

inline Rational power(const Rational& base, int e) {
  if (e < 0) {
    if (base == 0) throw DomainError("negative power of zero");
    return power(Rational(1) / base, -e);
  }
  Rational r = 1, b = base;
  for (unsigned u = static_cast<unsigned>(e); u; u >>= 1u) {
    if (u & 1u) r *= b;
    b *= b;
  }
  return r;
}

/// Nonnegative residue of n modulo m.
inline BigInt mod(const BigInt& n, const BigInt& m) {
  BigInt r = n % m;
  if (r < 0) r += m;
  return r;
}

}  // namespace rlab
