#pragma once

// Sparse multivariate Laurent polynomials with exact rational coefficients.

#include <algorithm>
#include <climits>
#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rlab/errors.hpp"
#include "rlab/rational.hpp"
#include "rlab/upoly.hpp"

namespace rlab {

class LaurentPoly {
 public:
  using Exponent = std::vector<int>;
  using TermMap = std::map<Exponent, Rational>;

  LaurentPoly() : vars_{"x", "y"} {}
  explicit LaurentPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}
  LaurentPoly(std::vector<std::string> vars, TermMap terms) : vars_(std::move(vars)), terms_(std::move(terms)) {
    for (const auto& [e, c] : terms_)
      if (e.size() != vars_.size()) throw DomainError("exponent vector length does not match variables");
    prune();
  }

  static LaurentPoly constant(const Rational& c, std::vector<std::string> vars = {"x", "y"}) {
    LaurentPoly p(std::move(vars));
    if (c != 0) p.terms_[Exponent(p.vars_.size(), 0)] = c;
    return p;
  }
  static LaurentPoly monomial(const Rational& c, Exponent e, std::vector<std::string> vars = {"x", "y"}) {
    LaurentPoly p(std::move(vars));
    if (e.size() != p.vars_.size()) throw DomainError("exponent vector length does not match variables");
    if (c != 0) p.terms_[std::move(e)] = c;
    return p;
  }
  /// The polynomial consisting of the single variable `name`.
  static LaurentPoly variable(const std::string& name, std::vector<std::string> vars = {"x", "y"}) {
    LaurentPoly p(std::move(vars));
    Exponent e(p.vars_.size(), 0);
    e[p.index_of(name)] = 1;
    p.terms_[e] = 1;
    return p;
  }

  const std::vector<std::string>& vars() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t nvars() const { return vars_.size(); }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  std::size_t index_of(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) return i;
    throw DomainError("unknown variable '" + name + "'");
  }

  Rational coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// Largest and smallest exponent of variable i over all terms.
  int max_degree(std::size_t i) const {
    int d = INT_MIN;
    for (const auto& [e, c] : terms_) d = std::max(d, e[i]);
    return d;
  }
  int min_degree(std::size_t i) const {
    int d = INT_MAX;
    for (const auto& [e, c] : terms_) d = std::min(d, e[i]);
    return d;
  }
  bool occurs(std::size_t i) const {
    for (const auto& [e, c] : terms_)
      if (e[i] != 0) return true;
    return false;
  }

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    a.check_compatible(b);
    LaurentPoly r = a;
    for (const auto& [e, c] : b.terms_) r.terms_[e] += c;
    r.prune();
    return r;
  }
  friend LaurentPoly operator-(const LaurentPoly& a) {
    LaurentPoly r = a;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    a.check_compatible(b);
    LaurentPoly r(a.vars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponent e(ea.size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        r.terms_[e] += ca * cb;
      }
    r.prune();
    return r;
  }
  friend LaurentPoly operator*(const Rational& s, const LaurentPoly& a) {
    LaurentPoly r = a;
    for (auto& [e, c] : r.terms_) c *= s;
    r.prune();
    return r;
  }
  LaurentPoly& operator+=(const LaurentPoly& o) { return *this = *this + o; }
  LaurentPoly& operator-=(const LaurentPoly& o) { return *this = *this - o; }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

  LaurentPoly pow(unsigned e) const {
    LaurentPoly r = constant(Rational(1), vars_), b = *this;
    while (e) {
      if (e & 1u) r *= b;
      b *= b;
      e >>= 1u;
    }
    return r;
  }

  /// Integer power; negative powers only for monomials.
  LaurentPoly pow_signed(long e) const {
    if (e >= 0) return pow(static_cast<unsigned>(e));
    if (terms_.size() != 1) throw DomainError("negative power of a non-monomial");
    const auto& [ex, c] = *terms_.begin();
    Exponent inv(ex.size());
    for (std::size_t i = 0; i < ex.size(); ++i) inv[i] = -ex[i];
    return monomial(Rational(1) / c, inv, vars_).pow(static_cast<unsigned>(-e));
  }

  template <class Real>
  std::complex<Real> eval(const std::vector<std::complex<Real>>& point) const {
    if (point.size() != vars_.size()) throw DomainError("evaluation point has wrong dimension");
    std::complex<Real> sum(0);
    for (const auto& [e, c] : terms_) {
      std::complex<Real> t(to_real<Real>(c));
      for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] != 0) t *= std::pow(point[i], e[i]);
      sum += t;
    }
    return sum;
  }

  Rational eval_exact(const std::vector<Rational>& point) const {
    if (point.size() != vars_.size()) throw DomainError("evaluation point has wrong dimension");
    Rational sum = 0;
    for (const auto& [e, c] : terms_) {
      Rational t = c;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (point[i] == 0 && e[i] < 0) throw DomainError("evaluation at a pole");
        Rational base = e[i] > 0 ? point[i] : Rational(1) / point[i];
        for (int j = 0; j < std::abs(e[i]); ++j) t *= base;
      }
      sum += t;
    }
    return sum;
  }

  /// var -> scale*var + offset. Requires nonnegative exponents in var.
  LaurentPoly substitute_affine(const std::string& var, const Rational& scale, const Rational& offset) const {
    const std::size_t vi = index_of(var);
    if (!is_zero() && min_degree(vi) < 0) throw DomainError("negative exponent in substituted variable '" + var + "'");
    LaurentPoly r(vars_);
    const LaurentPoly image = scale * variable(var, vars_) + constant(offset, vars_);
    for (const auto& [e, c] : terms_) {
      Exponent rest = e;
      rest[vi] = 0;
      r += monomial(c, rest, vars_) * image.pow(static_cast<unsigned>(e[vi]));
    }
    return r;
  }

  /// var -> var + offset. Requires nonnegative exponents in var.
  LaurentPoly substitute_shift(const std::string& var, const Rational& offset) const {
    return substitute_affine(var, Rational(1), offset);
  }

  LaurentPoly derivative(const std::string& var) const {
    const std::size_t vi = index_of(var);
    LaurentPoly r(vars_);
    for (const auto& [e, c] : terms_) {
      if (e[vi] == 0) continue;
      Exponent d = e;
      d[vi] -= 1;
      r.terms_[d] += c * e[vi];
    }
    r.prune();
    return r;
  }

  /// Multiply by the monomial with exponent `shift`.
  LaurentPoly shifted(const Exponent& shift) const {
    LaurentPoly r(vars_);
    for (const auto& [e, c] : terms_) {
      Exponent n = e;
      for (std::size_t i = 0; i < n.size(); ++i) n[i] += shift[i];
      r.terms_[n] = c;
    }
    return r;
  }

  /// Smallest monomial multiple with all exponents >= 0 and no monomial
  /// factor; returns the exponent of the multiplier used.
  std::pair<LaurentPoly, Exponent> clear_denominators() const {
    Exponent shift(vars_.size(), 0);
    if (is_zero()) return {*this, shift};
    for (std::size_t i = 0; i < vars_.size(); ++i) shift[i] = -min_degree(i);
    return {shifted(shift), shift};
  }

  /// p(1/x1, ..., 1/xn)
  LaurentPoly reflected() const {
    LaurentPoly r(vars_);
    for (const auto& [e, c] : terms_) {
      Exponent n = e;
      for (auto& v : n) v = -v;
      r.terms_[n] = c;
    }
    return r;
  }

  /// Exchange the roles of variables i and j (names stay in place).
  LaurentPoly swapped(std::size_t i, std::size_t j) const {
    LaurentPoly r(vars_);
    for (const auto& [e, c] : terms_) {
      Exponent n = e;
      std::swap(n[i], n[j]);
      r.terms_[n] = c;
    }
    return r;
  }

  /// Inversion of a single variable: var -> 1/var.
  LaurentPoly inverted(const std::string& var) const {
    const std::size_t vi = index_of(var);
    LaurentPoly r(vars_);
    for (const auto& [e, c] : terms_) {
      Exponent n = e;
      n[vi] = -n[vi];
      r.terms_[n] = c;
    }
    return r;
  }

  /// Coefficients of a polynomial in variable `var` (index j = power j after
  /// clearing denominators), each a univariate polynomial in the remaining
  /// variable. Only for two-variable polynomials.
  std::vector<QPoly> coefficients_in(const std::string& var) const {
    if (vars_.size() != 2) throw DomainError("coefficients_in needs exactly two variables");
    const std::size_t vi = index_of(var), oi = 1 - vi;
    const auto cleared = clear_denominators().first;
    if (cleared.is_zero()) return {};
    std::vector<std::vector<Rational>> rows(static_cast<std::size_t>(cleared.max_degree(vi)) + 1);
    for (const auto& [e, c] : cleared.terms_) {
      auto& row = rows[static_cast<std::size_t>(e[vi])];
      if (row.size() <= static_cast<std::size_t>(e[oi])) row.resize(static_cast<std::size_t>(e[oi]) + 1, Rational(0));
      row[static_cast<std::size_t>(e[oi])] = c;
    }
    std::vector<QPoly> out;
    for (auto& r : rows) out.emplace_back(std::move(r));
    return out;
  }

  /// Univariate polynomial when only one variable occurs (denominators cleared).
  QPoly as_univariate() const {
    std::size_t which = 0;
    int count = 0;
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (occurs(i)) {
        which = i;
        ++count;
      }
    if (count > 1) throw DomainError("polynomial is not univariate");
    const auto cleared = clear_denominators().first;
    std::vector<Rational> c;
    for (const auto& [e, v] : cleared.terms_) {
      auto d = static_cast<std::size_t>(e[which]);
      if (c.size() <= d) c.resize(d + 1, Rational(0));
      c[d] = v;
    }
    return QPoly(std::move(c));
  }

 private:
  void prune() {
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (it->second == 0) it = terms_.erase(it);
      else ++it;
    }
  }
  void check_compatible(const LaurentPoly& o) const {
    if (vars_ != o.vars_) throw DomainError("polynomials over different variable lists");
  }

  std::vector<std::string> vars_;
  TermMap terms_;
};

/// Text form accepted by parse_poly.
inline std::string to_string(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  std::string s;
  const auto& terms = p.terms();
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    const auto& [e, c] = *it;
    const bool neg = c < 0;
    const Rational a = neg ? Rational(-c) : c;
    if (!s.empty()) s += neg ? " - " : " + ";
    else if (neg) s += "-";
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += p.vars()[i];
      if (e[i] != 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) s += to_string(a);
    else if (a == 1) s += mono;
    else s += to_string(a) + "*" + mono;
  }
  return s;
}

}  // namespace rlab
