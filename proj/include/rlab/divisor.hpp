#pragma once

// Rational functions on a Weierstrass curve, their divisors, the group
// Z[E(C)]^- of divisors modulo (P) + (-P), and the diamond pairing
// (f) <> (g) = sum m_i n_j (S_i - T_j).

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "rlab/complex_roots.hpp"
#include "rlab/errors.hpp"
#include "rlab/laurent_poly.hpp"
#include "rlab/parse.hpp"
#include "rlab/periods.hpp"
#include "rlab/upoly.hpp"
#include "rlab/weierstrass.hpp"

namespace rlab {

/// numerator/denominator, polynomials in X, Y (stored in the variables x, y),
/// taken modulo the curve equation.
struct RationalFunctionOnCurve {
  LaurentPoly numerator = LaurentPoly::constant(Rational(1));
  LaurentPoly denominator = LaurentPoly::constant(Rational(1));

  RationalFunctionOnCurve() = default;
  RationalFunctionOnCurve(LaurentPoly num, LaurentPoly den = LaurentPoly::constant(Rational(1)))
      : numerator(std::move(num)), denominator(std::move(den)) {}

  friend RationalFunctionOnCurve operator*(const RationalFunctionOnCurve& f, const RationalFunctionOnCurve& g) {
    return {f.numerator * g.numerator, f.denominator * g.denominator};
  }
  RationalFunctionOnCurve inverse() const { return {denominator, numerator}; }

  template <class Real>
  std::complex<Real> eval(std::complex<Real> X, std::complex<Real> Y) const {
    return numerator.eval<Real>({X, Y}) / denominator.eval<Real>({X, Y});
  }
};

/// Parses numerator and denominator in X, Y (either case) with k bound.
inline RationalFunctionOnCurve function_on_curve(std::string num, std::string den, const Rational& k) {
  for (auto* s : {&num, &den})
    for (char& c : *s) {
      if (c == 'X') c = 'x';
      if (c == 'Y') c = 'y';
    }
  const Bindings b{{"k", k}};
  return {parse_poly(num, b), parse_poly(den, b)};
}

inline std::string to_string(const RationalFunctionOnCurve& f) {
  auto up = [](std::string s) {
    for (char& c : s) {
      if (c == 'x') c = 'X';
      if (c == 'y') c = 'Y';
    }
    return s;
  };
  const std::string n = up(to_string(f.numerator));
  if (f.denominator == LaurentPoly::constant(Rational(1))) return n;
  return "(" + n + ")/(" + up(to_string(f.denominator)) + ")";
}

/// The functions on E_k used by the regulator computation.
enum class NamedFunction { a1, a2, b1, b2, a, b, x0, y0, y2_over_x4, xp1_sq_over_x };

inline RationalFunctionOnCurve named_function(NamedFunction f, const Rational& k) {
  switch (f) {
    case NamedFunction::a1: return function_on_curve("X - k + 4", "1", k);
    case NamedFunction::a2: return function_on_curve("X - 3*k + 12", "1", k);
    case NamedFunction::b1: return function_on_curve("X + k - 4", "1", k);
    case NamedFunction::b2:
      return function_on_curve("1/2*X^2 + (k^2 - 7*k + 12)*X + (k - 4)*Y + k^3 - 15/2*k^2 + 12*k + 8", "1", k);
    case NamedFunction::a: return function_on_curve("2*(X - k + 4)", "X - 3*k + 12", k);
    case NamedFunction::b: {
      auto b2 = named_function(NamedFunction::b2, k);
      auto num = parse_poly("-(x + k - 4)^3", {{"k", k}});
      auto den = Rational(18) * parse_poly("x - 3*k + 12", {{"k", k}}) * b2.numerator;
      return {num, den};
    }
    case NamedFunction::x0: return function_on_curve("(2*k - 8)*X + 2*k^2 - 8*k - 2*Y", "(X + k)*(X + k - 4)", k);
    case NamedFunction::y0: return function_on_curve("(2*k - 8)*X + 2*k^2 - 8*k + 2*Y", "(X + k)*(X + k - 4)", k);
    case NamedFunction::y2_over_x4: {
      auto b2 = named_function(NamedFunction::b2, k).numerator;
      return {Rational(4) * b2 * b2, parse_poly("(x + k - 4)^4", {{"k", k}})};
    }
    case NamedFunction::xp1_sq_over_x: return function_on_curve("4*(k - 4)", "X + k - 4", k);
  }
  throw DomainError("unknown named function");
}

/// Formal sum of points.
struct Divisor {
  std::vector<std::pair<CurvePoint, long>> terms;

  long degree() const {
    long d = 0;
    for (const auto& t : terms) d += t.second;
    return d;
  }
  bool empty() const { return terms.empty(); }

  /// Adds m(P), merging with an equal point already present.
  void add(const CurvePoint& P, long m) {
    if (m == 0) return;
    for (auto it = terms.begin(); it != terms.end(); ++it)
      if (same_point(it->first, P)) {
        it->second += m;
        if (it->second == 0) terms.erase(it);
        return;
      }
    terms.emplace_back(P, m);
  }
  long multiplicity(const CurvePoint& P) const {
    for (const auto& t : terms)
      if (same_point(t.first, P)) return t.second;
    return 0;
  }

  friend Divisor operator+(Divisor a, const Divisor& b) {
    for (const auto& [P, m] : b.terms) a.add(P, m);
    return a;
  }
  friend Divisor operator*(long s, Divisor a) {
    Divisor out;
    for (const auto& [P, m] : a.terms) out.add(P, s * m);
    return out;
  }
  friend Divisor operator-(const Divisor& a) { return -1 * a; }
  friend Divisor operator-(const Divisor& a, const Divisor& b) { return a + (-b); }
};

inline std::string to_string(const Divisor& d) {
  if (d.terms.empty()) return "0";
  std::string out;
  for (const auto& [P, m] : d.terms) {
    out += out.empty() ? (m < 0 ? "-" : "") : (m < 0 ? " - " : " + ");
    const long a = m < 0 ? -m : m;
    if (a != 1) out += std::to_string(a);
    out += "(" + to_string(P) + ")";
  }
  return out;
}

namespace detail {

/// Polynomial in X and Y as coefficient rows by powers of Y.
inline std::vector<QPoly> rows_in_y(const LaurentPoly& p) {
  if (p.is_zero()) return {};
  if (p.min_degree(0) < 0 || p.min_degree(1) < 0) throw DomainError("function numerators must be polynomials in X, Y");
  std::vector<std::vector<Rational>> rows(static_cast<std::size_t>(p.max_degree(1)) + 1);
  for (const auto& [e, c] : p.terms()) {
    auto& row = rows[static_cast<std::size_t>(e[1])];
    if (row.size() <= static_cast<std::size_t>(e[0])) row.resize(static_cast<std::size_t>(e[0]) + 1, Rational(0));
    row[static_cast<std::size_t>(e[0])] = c;
  }
  std::vector<QPoly> out;
  for (auto& r : rows) out.emplace_back(std::move(r));
  return out;
}

}  // namespace detail

/// A(X) + B(X) Y congruent to p modulo the curve equation.
inline std::pair<QPoly, QPoly> reduce_mod_curve(const WeierstrassCurve& e, const LaurentPoly& p) {
  auto c = detail::rows_in_y(p);
  const QPoly f = e.rhs();
  const QPoly lin({e.a3, e.a1});
  for (std::size_t d = c.size(); d-- > 2;) {
    if (c[d].is_zero()) continue;
    c[d - 2] = c[d - 2] + c[d] * f;
    c[d - 1] = c[d - 1] - c[d] * lin;
    c[d] = QPoly();
  }
  return {c.size() > 0 ? c[0] : QPoly(), c.size() > 1 ? c[1] : QPoly()};
}

/// Norm to Q(X) of A + B Y: A^2 - A B (a1 X + a3) - B^2 (X^3 + a2 X^2 + a4 X + a6).
inline QPoly norm_of(const WeierstrassCurve& e, const QPoly& A, const QPoly& B) {
  const QPoly lin({e.a3, e.a1});
  return A * A - A * B * lin - B * B * e.rhs();
}

namespace detail {

struct Root {
  bool exact = false;
  Rational x;
  cld value;
};

/// Roots of a squarefree polynomial: rational ones exactly, the rest numerically.
inline std::vector<Root> roots_of_squarefree(QPoly g) {
  std::vector<Root> out;
  for (const auto& [r, m] : rational_roots(g)) {
    out.push_back({true, r, cld(to_real<long double>(r))});
    g = g / QPoly::linear_root(r);
  }
  if (g.degree() >= 1) {
    const auto c = g.numeric_coeffs<long double>();
    for (auto z : polynomial_roots<long double>(c)) {
      z = polish_root(c, z, 3);
      if (std::fabs(z.imag()) < 1e-17L * (1 + std::abs(z))) z = cld(z.real());
      out.push_back({false, Rational(0), z});
    }
  }
  return out;
}

inline bool is_two_division(const WeierstrassCurve& e, const Root& r) {
  if (r.exact) return e.two_division()(r.x) == 0;
  const auto c = e.two_division().numeric_coeffs<long double>();
  return std::abs(horner(c, r.value)) < 1e-12L * (1 + std::pow(std::abs(r.value), 3));
}

inline std::array<CurvePoint, 2> points_over_root(const WeierstrassCurve& e, const Root& r) {
  if (r.exact)
    if (auto pts = rational_points_over(e, r.x)) return *pts;
  return points_over(e, r.value);
}

}  // namespace detail

/// Zeros minus poles of a polynomial A + B Y on the curve, including O. The
/// common factor G = gcd(A, B) contributes both points over each of its roots;
/// the cofactor A1 + B1 Y vanishes at exactly one point (X0, -A1(X0)/B1(X0))
/// over each root X0 of its norm, with order equal to the root multiplicity
/// (Yun's decomposition, exact).
inline Divisor divisor_of_polynomial(const WeierstrassCurve& e, const LaurentPoly& p) {
  auto [A, B] = reduce_mod_curve(e, p);
  if (A.is_zero() && B.is_zero()) throw DomainError("function vanishes identically on the curve");
  Divisor out;
  QPoly G = B.is_zero() ? A.monic() : gcd(A, B);
  const QPoly A1 = A / G, B1 = B.is_zero() ? QPoly() : B / G;

  for (const auto& [g, mult] : squarefree_decomposition(G))
    for (const auto& r : detail::roots_of_squarefree(g)) {
      const auto pts = detail::points_over_root(e, r);
      if (detail::is_two_division(e, r)) {
        out.add(pts[0], 2 * mult);
      } else {
        out.add(pts[0], mult);
        out.add(pts[1], mult);
      }
    }

  const QPoly N1 = norm_of(e, A1, B1);
  for (const auto& [g, mult] : squarefree_decomposition(N1))
    for (const auto& r : detail::roots_of_squarefree(g)) {
      if (r.exact) {
        out.add(CurvePoint::rational(r.x, -A1(r.x) / B1(r.x)), mult);
      } else {
        const cld y = -A1.eval<long double>(r.value) / B1.eval<long double>(r.value);
        out.add(CurvePoint::numeric(r.value, y), mult);
      }
    }

  const int deg_norm = 2 * G.degree() + N1.degree();
  out.add(CurvePoint::zero(), -deg_norm);
  return out;
}

inline Divisor divisor_of(const RationalFunctionOnCurve& f, const WeierstrassCurve& e) {
  return divisor_of_polynomial(e, f.numerator) - divisor_of_polynomial(e, f.denominator);
}

struct ClassTerm {
  CurvePoint point;
  /// u = alpha*omega1 + beta*omega2 with alpha, beta in [0,1)
  long double alpha = 0, beta = 0;
  long mult = 0;
};

/// An element of Z[E(C)]^-: one representative per {P, -P}, no 2-torsion.
struct DivisorClass {
  std::vector<ClassTerm> terms;
  /// set when a diamond input had nonzero degree
  bool degree_warning = false;
  bool empty() const { return terms.empty(); }
};

inline constexpr long double class_tolerance = 1e-9L;

namespace detail {

/// distance between a and b on R/Z
inline long double circ_dist(long double a, long double b) {
  const long double d = std::fabs(a - b);
  const long double f = d - std::floor(d);
  return std::min(f, 1 - f);
}

inline long double snap(long double a) {
  a = frac_part(a);
  if (a < class_tolerance || 1 - a < class_tolerance) return 0;
  return a;
}

}  // namespace detail

/// Canonical form: merge equal points, fold -P onto P with a sign change
/// (the representative has the smaller (alpha, beta) lexicographically),
/// drop O, 2-torsion and zero multiplicities, and sort.
inline DivisorClass canonicalize(const WeierstrassCurve& e, DivisorClass c) {
  using detail::circ_dist;
  using detail::snap;
  std::vector<ClassTerm> folded;
  for (auto t : c.terms) {
    if (t.mult == 0) continue;
    t.alpha = snap(t.alpha);
    t.beta = snap(t.beta);
    if (circ_dist(2 * t.alpha, 0) < class_tolerance && circ_dist(2 * t.beta, 0) < class_tolerance) continue;
    const long double na = snap(-t.alpha), nb = snap(-t.beta);
    const bool flip = na < t.alpha - class_tolerance || (std::fabs(na - t.alpha) <= class_tolerance && nb < t.beta);
    if (flip) {
      t.alpha = na;
      t.beta = nb;
      t.point = negate(e, t.point);
      t.mult = -t.mult;
    }
    bool merged = false;
    for (auto& f : folded)
      if (circ_dist(f.alpha, t.alpha) < class_tolerance && circ_dist(f.beta, t.beta) < class_tolerance) {
        f.mult += t.mult;
        merged = true;
        break;
      }
    if (!merged) folded.push_back(t);
  }
  std::erase_if(folded, [](const ClassTerm& t) { return t.mult == 0; });
  std::sort(folded.begin(), folded.end(), [](const ClassTerm& a, const ClassTerm& b) {
    if (std::fabs(a.alpha - b.alpha) > class_tolerance) return a.alpha < b.alpha;
    return a.beta < b.beta;
  });
  c.terms = std::move(folded);
  return c;
}

inline ClassTerm class_term(const WeierstrassCurve& e, const PeriodLattice& L, const CurvePoint& P, long m) {
  ClassTerm t;
  t.point = P;
  t.mult = m;
  if (!P.infinity) {
    std::tie(t.alpha, t.beta) = lattice_coordinates(L, elliptic_log(e, P, L));
  }
  return t;
}

inline DivisorClass class_of(const Divisor& d, const WeierstrassCurve& e, const PeriodLattice& L) {
  DivisorClass c;
  for (const auto& [P, m] : d.terms) c.terms.push_back(class_term(e, L, P, m));
  return canonicalize(e, std::move(c));
}

inline DivisorClass operator+(const DivisorClass& a, const DivisorClass& b) {
  // terms are already canonical, so merging needs no curve
  DivisorClass out = a;
  out.degree_warning = a.degree_warning || b.degree_warning;
  for (const auto& t : b.terms) {
    bool merged = false;
    for (auto& f : out.terms)
      if (detail::circ_dist(f.alpha, t.alpha) < class_tolerance && detail::circ_dist(f.beta, t.beta) < class_tolerance) {
        f.mult += t.mult;
        merged = true;
        break;
      }
    if (!merged) out.terms.push_back(t);
  }
  std::erase_if(out.terms, [](const ClassTerm& t) { return t.mult == 0; });
  std::sort(out.terms.begin(), out.terms.end(), [](const ClassTerm& x, const ClassTerm& y) {
    if (std::fabs(x.alpha - y.alpha) > class_tolerance) return x.alpha < y.alpha;
    return x.beta < y.beta;
  });
  return out;
}

inline DivisorClass operator*(long s, DivisorClass c) {
  for (auto& t : c.terms) t.mult *= s;
  if (s == 0) c.terms.clear();
  return c;
}

inline DivisorClass operator-(const DivisorClass& a) { return -1 * a; }
inline DivisorClass operator-(const DivisorClass& a, const DivisorClass& b) { return a + (-b); }

inline bool equivalent(const DivisorClass& a, const DivisorClass& b) {
  const DivisorClass d = a - b;
  return d.terms.empty();
}

inline std::string to_string(const DivisorClass& c) {
  if (c.terms.empty()) return "0";
  std::string out;
  for (const auto& t : c.terms) {
    out += out.empty() ? (t.mult < 0 ? "-" : "") : (t.mult < 0 ? " - " : " + ");
    const long a = t.mult < 0 ? -t.mult : t.mult;
    if (a != 1) out += std::to_string(a);
    char buf[64];
    std::snprintf(buf, sizeof buf, "[%.10Lg,%.10Lg]", t.alpha, t.beta);
    out += "(" + to_string(t.point) + buf + ")";
  }
  return out;
}

/// sum m_i n_j (S_i - T_j) in Z[E(C)]^-. Differences use the group law for
/// the point and the elliptic logarithms for the lattice coordinates.
inline DivisorClass diamond(const Divisor& d1, const Divisor& d2, const WeierstrassCurve& e, const PeriodLattice& L) {
  DivisorClass c;
  c.degree_warning = d1.degree() != 0 || d2.degree() != 0;
  std::vector<ClassTerm> t1, t2;
  for (const auto& [P, m] : d1.terms) t1.push_back(class_term(e, L, P, m));
  for (const auto& [P, m] : d2.terms) t2.push_back(class_term(e, L, P, m));
  for (const auto& s : t1)
    for (const auto& t : t2) {
      ClassTerm d;
      d.point = subtract(e, s.point, t.point);
      d.alpha = s.alpha - t.alpha;
      d.beta = s.beta - t.beta;
      d.mult = s.mult * t.mult;
      c.terms.push_back(d);
    }
  return canonicalize(e, std::move(c));
}

inline DivisorClass diamond(const RationalFunctionOnCurve& f, const RationalFunctionOnCurve& g,
                            const WeierstrassCurve& e, const PeriodLattice& L) {
  return diamond(divisor_of(f, e), divisor_of(g, e), e, L);
}

}  // namespace rlab
