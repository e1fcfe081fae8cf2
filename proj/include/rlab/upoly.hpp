#pragma once

// Dense univariate polynomials over an exact field (in practice Rational).

#include <algorithm>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "rlab/errors.hpp"
#include "rlab/rational.hpp"

namespace rlab {

template <class Coeff>
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Coeff> coeffs) : c_(std::move(coeffs)) { trim(); }
  UPoly(std::initializer_list<Coeff> coeffs) : c_(coeffs) { trim(); }
  static UPoly constant(Coeff v) { return UPoly(std::vector<Coeff>{std::move(v)}); }
  static UPoly monomial(Coeff v, int degree) {
    std::vector<Coeff> c(static_cast<std::size_t>(degree) + 1, Coeff(0));
    c.back() = std::move(v);
    return UPoly(std::move(c));
  }
  /// t - root
  static UPoly linear_root(const Coeff& root) { return UPoly({Coeff(-root), Coeff(1)}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Coeff>& coeffs() const { return c_; }
  Coeff operator[](int i) const {
    return i >= 0 && i < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(i)] : Coeff(0);
  }
  const Coeff& leading() const {
    if (c_.empty()) throw DomainError("leading coefficient of zero polynomial");
    return c_.back();
  }

  Coeff operator()(const Coeff& x) const {
    Coeff acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  /// Horner evaluation after converting coefficients to a numeric type.
  template <class Real>
  std::complex<Real> eval(std::complex<Real> x) const {
    std::complex<Real> acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + to_real<Real>(*it);
    return acc;
  }

  template <class Real>
  std::vector<std::complex<Real>> numeric_coeffs() const {
    std::vector<std::complex<Real>> out;
    out.reserve(c_.size());
    for (const auto& v : c_) out.emplace_back(to_real<Real>(v), Real(0));
    return out;
  }

  UPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Coeff> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Coeff(static_cast<long long>(i));
    return UPoly(std::move(d));
  }

  UPoly monic() const {
    if (is_zero()) return {};
    UPoly r = *this;
    const Coeff lc = leading();
    for (auto& v : r.c_) v /= lc;
    return r;
  }

  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<Coeff> c(std::max(a.c_.size(), b.c_.size()), Coeff(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return UPoly(std::move(c));
  }
  friend UPoly operator-(const UPoly& a) {
    UPoly r = a;
    for (auto& v : r.c_) v = -v;
    return r;
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Coeff> c(a.c_.size() + b.c_.size() - 1, Coeff(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return UPoly(std::move(c));
  }
  friend UPoly operator*(const Coeff& s, const UPoly& a) {
    UPoly r = a;
    for (auto& v : r.c_) v *= s;
    r.trim();
    return r;
  }
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }
  UPoly& operator+=(const UPoly& o) { return *this = *this + o; }
  UPoly& operator*=(const UPoly& o) { return *this = *this * o; }

  UPoly pow(unsigned e) const {
    UPoly r = constant(Coeff(1)), b = *this;
    while (e) {
      if (e & 1u) r *= b;
      b *= b;
      e >>= 1u;
    }
    return r;
  }

  /// Composition this(inner(t)).
  UPoly compose(const UPoly& inner) const {
    UPoly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * inner + constant(*it);
    return acc;
  }

  /// t^deg * p(1/t)
  UPoly reversed() const {
    std::vector<Coeff> c(c_.rbegin(), c_.rend());
    return UPoly(std::move(c));
  }

  /// Strip the largest power of t dividing the polynomial; returns that power.
  int strip_t_power() {
    std::size_t k = 0;
    while (k < c_.size() && c_[k] == Coeff(0)) ++k;
    c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(k));
    return static_cast<int>(k);
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == Coeff(0)) c_.pop_back();
  }
  std::vector<Coeff> c_;
};

using QPoly = UPoly<Rational>;

template <class Coeff>
std::pair<UPoly<Coeff>, UPoly<Coeff>> divmod(const UPoly<Coeff>& a, const UPoly<Coeff>& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  std::vector<Coeff> rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {UPoly<Coeff>(), a};
  std::vector<Coeff> quo(static_cast<std::size_t>(a.degree() - db + 1), Coeff(0));
  const Coeff lc = b.leading();
  for (int i = a.degree(); i >= db; --i) {
    Coeff f = rem[static_cast<std::size_t>(i)] / lc;
    if (f == Coeff(0)) continue;
    quo[static_cast<std::size_t>(i - db)] = f;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(i - db + j)] -= f * b[j];
  }
  rem.resize(static_cast<std::size_t>(db));
  return {UPoly<Coeff>(std::move(quo)), UPoly<Coeff>(std::move(rem))};
}

template <class Coeff>
UPoly<Coeff> operator%(const UPoly<Coeff>& a, const UPoly<Coeff>& b) {
  return divmod(a, b).second;
}

template <class Coeff>
UPoly<Coeff> operator/(const UPoly<Coeff>& a, const UPoly<Coeff>& b) {
  return divmod(a, b).first;
}

/// Monic gcd; gcd(0,0) = 0.
template <class Coeff>
UPoly<Coeff> gcd(UPoly<Coeff> a, UPoly<Coeff> b) {
  while (!b.is_zero()) {
    auto r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

template <class Coeff>
bool divides(const UPoly<Coeff>& d, const UPoly<Coeff>& p) {
  return (p % d).is_zero();
}

/// Yun's algorithm: p = lc * prod f_i^i with f_i squarefree and pairwise coprime.
template <class Coeff>
std::vector<std::pair<UPoly<Coeff>, int>> squarefree_decomposition(const UPoly<Coeff>& p) {
  std::vector<std::pair<UPoly<Coeff>, int>> out;
  if (p.degree() < 1) return out;
  auto a = p.monic();
  auto b = a.derivative();
  auto c = gcd(a, b);
  auto w = a / c;
  auto y = b / c;
  auto z = y - w.derivative();
  int i = 1;
  while (w.degree() > 0) {
    auto g = gcd(w, z);
    if (g.degree() > 0) out.emplace_back(g, i);
    w = w / g;
    y = z / g;
    z = y - w.derivative();
    ++i;
  }
  return out;
}

template <class Coeff>
UPoly<Coeff> squarefree_part(const UPoly<Coeff>& p) {
  if (p.degree() < 1) return p.monic();
  return p.monic() / gcd(p, p.derivative());
}

/// n-th cyclotomic polynomial.
inline QPoly cyclotomic(int n) {
  if (n < 1) throw DomainError("cyclotomic index must be positive");
  QPoly p = QPoly::monomial(Rational(1), n) - QPoly::constant(Rational(1));
  for (int d = 1; d < n; ++d)
    if (n % d == 0) p = p / cyclotomic(d);
  return p;
}

inline long euler_phi(long n) {
  long result = n;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

/// Multiply by the lcm of denominators and divide by the content: a primitive
/// integer polynomial with positive leading coefficient.
inline std::vector<BigInt> primitive_integer_coeffs(const QPoly& p) {
  BigInt den = 1;
  for (const auto& c : p.coeffs()) den = lcm(den, denominator_of(c));
  std::vector<BigInt> out;
  BigInt content = 0;
  for (const auto& c : p.coeffs()) {
    BigInt v = numerator_of(c) * (den / denominator_of(c));
    out.push_back(v);
    content = gcd(content, v);
  }
  if (content == 0) return out;
  if (out.back() < 0) content = -content;
  for (auto& v : out) v /= content;
  return out;
}

inline std::string to_string(const QPoly& p, const std::string& var = "t") {
  if (p.is_zero()) return "0";
  std::string s;
  for (int i = p.degree(); i >= 0; --i) {
    const Rational c = p[i];
    if (c == 0) continue;
    Rational a = c < 0 ? Rational(-c) : c;
    if (!s.empty()) s += c < 0 ? " - " : " + ";
    else if (c < 0) s += "-";
    bool unit = a == 1 && i > 0;
    if (!unit) s += to_string(a);
    if (i > 0) {
      if (!unit) s += "*";
      s += var;
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s;
}

/// Exact interpolation through (x_i, y_i) by Newton divided differences.
inline QPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  const std::size_t n = xs.size();
  std::vector<Rational> dd = ys;
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = n - 1; i >= level; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
      if (i == level) break;
    }
  QPoly result;
  for (std::size_t i = n; i-- > 0;) {
    result = result * QPoly::linear_root(xs[i]) + QPoly::constant(dd[i]);
  }
  return result;
}

/// Determinant over the rationals by Gaussian elimination (exact).
inline Rational determinant(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      Rational f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

/// Sylvester matrix of a (degree da) and b (degree db) using formal degrees:
/// leading coefficients may be zero, which keeps specialization compatible
/// with the generic resultant.
template <class Coeff>
std::vector<std::vector<Coeff>> sylvester_matrix(const std::vector<Coeff>& a, const std::vector<Coeff>& b) {
  const std::size_t da = a.size() - 1, db = b.size() - 1, n = da + db;
  std::vector<std::vector<Coeff>> m(n, std::vector<Coeff>(n, Coeff(0)));
  for (std::size_t r = 0; r < db; ++r)
    for (std::size_t i = 0; i <= da; ++i) m[r][r + i] = a[da - i];
  for (std::size_t r = 0; r < da; ++r)
    for (std::size_t i = 0; i <= db; ++i) m[db + r][r + i] = b[db - i];
  return m;
}

inline Rational resultant(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return 0;
  if (a.degree() == 0 && b.degree() == 0) return 1;
  return determinant(sylvester_matrix(a.coeffs(), b.coeffs()));
}

}  // namespace rlab
