#pragma once

// Integral Weierstrass models, Tate's algorithm for the local reduction type
// and conductor exponent, and global minimal models over Q.

#include <boost/multiprecision/miller_rabin.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rlab/errors.hpp"
#include "rlab/rational.hpp"
#include "rlab/weierstrass.hpp"

namespace rlab {

/// x = u^2 x' + r, y = u^3 y' + s u^2 x' + t.
struct ModelTransform {
  Rational u = 1, r = 0, s = 0, t = 0;
};

inline WeierstrassCurve apply_transform(const WeierstrassCurve& e, const ModelTransform& w) {
  const Rational &u = w.u, &r = w.r, &s = w.s, &t = w.t;
  WeierstrassCurve o;
  o.a1 = (e.a1 + 2 * s) / u;
  o.a2 = (e.a2 - s * e.a1 + 3 * r - s * s) / power(u, 2);
  o.a3 = (e.a3 + r * e.a1 + 2 * t) / power(u, 3);
  o.a4 = (e.a4 - s * e.a3 + 2 * r * e.a2 - (t + r * s) * e.a1 + 3 * r * r - 2 * s * t) / power(u, 4);
  o.a6 = (e.a6 + r * e.a4 + r * r * e.a2 + r * r * r - t * e.a3 - t * t - r * t * e.a1) / power(u, 6);
  return o;
}

/// Composition: first a, then b.
inline ModelTransform compose(const ModelTransform& a, const ModelTransform& b) {
  return {a.u * b.u, a.r + a.u * a.u * b.r, a.s + a.u * b.s, a.t + a.u * a.u * a.s * b.r + power(a.u, 3) * b.t};
}

inline bool is_integral(const WeierstrassCurve& e) {
  return is_integer(e.a1) && is_integer(e.a2) && is_integer(e.a3) && is_integer(e.a4) && is_integer(e.a6);
}

/// Prime factors with exponents: trial division, Miller-Rabin, Pollard rho.
inline std::map<BigInt, int> factorize(BigInt n) {
  std::map<BigInt, int> out;
  if (n < 0) n = -n;
  if (n == 0) throw DomainError("factorization of zero");
  for (long p = 2; p < 1000; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      n /= p;
      ++out[BigInt(p)];
    }
  }
  std::mt19937_64 rng(12345);
  std::function<void(BigInt)> split = [&](BigInt m) {
    if (m == 1) return;
    if (boost::multiprecision::miller_rabin_test(m, 30, rng)) {
      ++out[m];
      return;
    }
    for (BigInt c = 1;; ++c) {
      BigInt x = 2, y = 2, d = 1;
      auto f = [&](const BigInt& v) { return (v * v + c) % m; };
      while (d == 1) {
        x = f(x);
        y = f(f(y));
        d = gcd(x > y ? BigInt(x - y) : BigInt(y - x), m);
      }
      if (d != m) {
        split(d);
        split(m / d);
        return;
      }
    }
  };
  split(n);
  return out;
}

struct LocalReduction {
  BigInt p;
  /// conductor exponent
  int f = 0;
  /// valuation of the minimal discriminant
  int disc_valuation = 0;
  std::string kodaira;
  /// 1 split multiplicative, -1 nonsplit, 0 additive; unused for good p
  int bad_ap = 0;
  bool good() const { return f == 0; }
};

namespace detail {

inline int val(const Rational& x, const BigInt& p) { return x == 0 ? 1000 : valuation(x, p); }

inline BigInt modp(const Rational& x, const BigInt& p) {
  if (!is_integer(x)) throw DomainError("Tate's algorithm needs an integral model");
  return mod(numerator_of(x), p);
}

inline BigInt inv_mod(const BigInt& a, const BigInt& p) {
  // Fermat, p prime
  return boost::multiprecision::powm(mod(a, p), p - 2, p);
}

/// Roots of a polynomial (coefficients low to high) modulo a small prime.
inline std::vector<BigInt> roots_mod_small(const std::vector<Rational>& c, const BigInt& p) {
  std::vector<BigInt> out;
  for (BigInt x = 0; x < p; ++x) {
    BigInt acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = mod(acc * x + numerator_of(*it), p);
    if (acc == 0) out.push_back(x);
  }
  return out;
}

/// Quadratic t^2 + b t - c modulo p has a double root: return it.
inline BigInt double_root_quadratic(const BigInt& b, const BigInt& c, const BigInt& p) {
  if (p == 2) return mod(c, p);
  return mod(-b * inv_mod(BigInt(2), p), p);
}

inline bool quadratic_has_distinct_roots(const BigInt& b, const BigInt& c, const BigInt& p) {
  // t^2 + b t - c: discriminant b^2 + 4c, characteristic 2 handled by b
  if (p == 2) return mod(b, p) != 0;
  return mod(b * b + 4 * c, p) != 0;
}

}  // namespace detail

/// Tate's algorithm at p. e must be integral; it is replaced by a model that is
/// minimal at p (integral shifts and at most a scaling by powers of p) and the
/// accumulated transform is composed into *w when given.
inline LocalReduction tate_local(WeierstrassCurve& e, const BigInt& p, ModelTransform* w = nullptr) {
  using detail::modp;
  using detail::val;
  auto apply = [&](const ModelTransform& t) {
    e = apply_transform(e, t);
    if (w) *w = compose(*w, t);
  };
  auto inconsistent = [&](const char* where) {
    throw ConvergenceError(std::string("Tate's algorithm inconsistency (") + where + ") at p = " + p.str() +
                           " for " + to_string(e));
  };
  const bool small = p < 64;
  LocalReduction out;
  out.p = p;
  for (int restart = 0; restart < 64; ++restart) {
    if (!is_integral(e)) inconsistent("non-integral model");
    const Rational disc = e.discriminant();
    const int n = val(disc, p);
    out.disc_valuation = n;
    if (n == 0) {
      out.kodaira = "I0";
      out.f = 0;
      return out;
    }
    // move the singular point of the reduction to (0,0)
    {
      bool done = false;
      if (small) {
        for (BigInt r = 0; r < p && !done; ++r)
          for (BigInt t = 0; t < p && !done; ++t) {
            const auto c = apply_transform(e, {1, Rational(r), 0, Rational(t)});
            if (modp(c.a3, p) == 0 && modp(c.a4, p) == 0 && modp(c.a6, p) == 0) {
              apply({1, Rational(r), 0, Rational(t)});
              done = true;
            }
          }
      } else {
        const BigInt b2 = modp(e.b2(), p), c4 = modp(e.c4(), p), c6 = modp(e.c6(), p);
        BigInt r;
        if (c4 == 0) r = mod(-b2 * detail::inv_mod(BigInt(12), p), p);
        else r = mod(-(c6 + b2 * c4) * detail::inv_mod(12 * c4, p), p);
        const BigInt t = mod(-(modp(e.a1, p) * r + modp(e.a3, p)) * detail::inv_mod(BigInt(2), p), p);
        apply({1, Rational(r), 0, Rational(t)});
        done = modp(e.a3, p) == 0 && modp(e.a4, p) == 0 && modp(e.a6, p) == 0;
      }
      if (!done) inconsistent("singular point");
    }
    if (modp(e.c4(), p) != 0) {
      out.kodaira = "I" + std::to_string(n);
      out.f = 1;
      // split iff t^2 + a1 t - a2 has its roots in F_p
      bool split;
      if (p == 2) split = modp(e.a2, p) == 0;
      else {
        const BigInt d = mod(numerator_of(e.a1 * e.a1 + 4 * e.a2), p);
        split = boost::multiprecision::powm(d, (p - 1) / 2, p) == 1;
      }
      out.bad_ap = split ? 1 : -1;
      return out;
    }
    out.bad_ap = 0;
    if (val(e.a6, p) < 2) {
      out.kodaira = "II";
      out.f = n;
      return out;
    }
    if (val(e.b8(), p) < 3) {
      out.kodaira = "III";
      out.f = n - 1;
      return out;
    }
    if (val(e.b6(), p) < 3) {
      out.kodaira = "IV";
      out.f = n - 2;
      return out;
    }
    // p | a1, a2; p^2 | a3, a4; p^3 | a6
    {
      bool done = false;
      auto ok = [&](const WeierstrassCurve& c) {
        return val(c.a1, p) >= 1 && val(c.a2, p) >= 1 && val(c.a3, p) >= 2 && val(c.a4, p) >= 2 && val(c.a6, p) >= 3;
      };
      if (small) {
        const BigInt p2 = p * p;
        for (BigInt s = 0; s < p && !done; ++s)
          for (BigInt t = 0; t < p2 && !done; t += p) {
            const auto c = apply_transform(e, {1, 0, Rational(s), Rational(t)});
            if (ok(c)) {
              apply({1, 0, Rational(s), Rational(t)});
              done = true;
            }
          }
      } else {
        const BigInt inv2 = detail::inv_mod(BigInt(2), p);
        const BigInt s = mod(-modp(e.a1, p) * inv2, p);
        const BigInt t = p * mod(-numerator_of(e.a3 / Rational(p)) * inv2, p);
        apply({1, 0, Rational(s), Rational(t)});
        done = ok(e);
      }
      if (!done) inconsistent("divisibility of a1..a6");
    }
    const Rational P(p), P2 = P * P, P3 = P2 * P;
    // T^3 + a2/p T^2 + a4/p^2 T + a6/p^3 modulo p
    const std::vector<Rational> cubic{e.a6 / P3, e.a4 / P2, e.a2 / P, Rational(1)};
    int kind;  // 0 distinct, 2 double, 3 triple
    BigInt alpha = 0;
    {
      const BigInt b = modp(cubic[2], p), c = modp(cubic[1], p), d = modp(cubic[0], p);
      const BigInt disc3 = mod(b * b * c * c - 4 * c * c * c - 4 * b * b * b * d - 27 * d * d + 18 * b * c * d, p);
      if (disc3 != 0) kind = 0;
      else {
        std::optional<BigInt> triple, dbl;
        if (small) {
          for (const auto& x : detail::roots_mod_small(cubic, p)) {
            const bool cube = mod(b + 3 * x, p) == 0 && mod(c - 3 * x * x, p) == 0 && mod(d + x * x * x, p) == 0;
            if (cube) triple = x;
            else if (mod(3 * x * x + 2 * b * x + c, p) == 0) dbl = x;
          }
        } else {
          const BigInt inv3 = detail::inv_mod(BigInt(3), p);
          const BigInt x = mod(-b * inv3, p);
          if (mod(c - 3 * x * x, p) == 0 && mod(d + x * x * x, p) == 0) triple = x;
          else dbl = mod((9 * d - b * c) * detail::inv_mod(2 * (b * b - 3 * c), p), p);
        }
        if (triple) {
          kind = 3;
          alpha = *triple;
        } else if (dbl) {
          kind = 2;
          alpha = *dbl;
        } else {
          inconsistent("multiple root of the cubic");
          kind = 0;
        }
      }
    }
    if (kind == 0) {
      out.kodaira = "I0*";
      out.f = n - 4;
      return out;
    }
    if (kind == 2) {
      apply({1, Rational(alpha * p), 0, 0});
      int m = 1;
      BigInt mx = p * p, my = p * p;
      while (true) {
        // Y^2 + xa3 Y - xa6
        const BigInt xa3 = numerator_of(e.a3 / Rational(my)), xa6 = numerator_of(e.a6 / Rational(mx * my));
        if (detail::quadratic_has_distinct_roots(xa3, xa6, p)) break;
        apply({1, 0, 0, Rational(my * detail::double_root_quadratic(xa3, xa6, p))});
        my *= p;
        ++m;
        const BigInt ya2 = numerator_of(e.a2 / P), ya4 = numerator_of(e.a4 / Rational(p * mx));
        const BigInt ya6 = numerator_of(e.a6 / Rational(mx * my));
        // ya2 X^2 + ya4 X + ya6
        const bool distinct = p == 2 ? mod(ya4, p) != 0 : mod(ya4 * ya4 - 4 * ya2 * ya6, p) != 0;
        if (distinct) break;
        const BigInt root =
            p == 2 ? mod(ya6 * ya2, p) : mod(-ya4 * detail::inv_mod(2 * ya2, p), p);
        apply({1, Rational(mx * root), 0, 0});
        mx *= p;
        ++m;
      }
      out.kodaira = "I" + std::to_string(m) + "*";
      out.f = n - 4 - m;
      return out;
    }
    // triple root
    apply({1, Rational(alpha * p), 0, 0});
    {
      const BigInt x3 = numerator_of(e.a3 / P2), x6 = numerator_of(e.a6 / (P2 * P2));
      if (detail::quadratic_has_distinct_roots(x3, x6, p)) {
        out.kodaira = "IV*";
        out.f = n - 6;
        return out;
      }
      apply({1, 0, 0, Rational(p * p * detail::double_root_quadratic(x3, x6, p))});
    }
    if (val(e.a4, p) < 4) {
      out.kodaira = "III*";
      out.f = n - 7;
      return out;
    }
    if (val(e.a6, p) < 6) {
      out.kodaira = "II*";
      out.f = n - 8;
      return out;
    }
    // not minimal at p
    apply({Rational(p), 0, 0, 0});
  }
  inconsistent("no termination");
  return out;
}

struct MinimalModel {
  WeierstrassCurve curve;
  /// from the input model to the minimal one
  ModelTransform transform;
  std::vector<LocalReduction> local;
  BigInt conductor = 1;
};

/// Reduced global minimal model (a1, a3 in {0,1}, a2 in {-1,0,1}) with the
/// local data at every bad prime.
inline MinimalModel minimal_model_data(const WeierstrassCurve& input) {
  if (input.discriminant() == 0) throw SingularCurveError("minimal model of a singular curve");
  MinimalModel out;
  WeierstrassCurve e = input;
  e.label.reset();
  // clear denominators: u = 1/d with d^i a_i integral
  BigInt d = 1;
  for (const auto* a : {&e.a1, &e.a2, &e.a3, &e.a4, &e.a6}) d = lcm(d, denominator_of(*a));
  if (d != 1) {
    const ModelTransform w{Rational(1) / Rational(d), 0, 0, 0};
    e = apply_transform(e, w);
    out.transform = compose(out.transform, w);
  }
  for (const auto& [p, k] : factorize(numerator_of(e.discriminant()))) tate_local(e, p, &out.transform);
  // Kraus normalization from c4, c6
  const BigInt c4 = numerator_of(e.c4()), c6 = numerator_of(e.c6());
  BigInt b2 = mod(-c6, BigInt(12));
  if (b2 > 6) b2 -= 12;
  const Rational B2(b2), B4 = (B2 * B2 - Rational(c4)) / 24, B6 = (-B2 * B2 * B2 + 36 * B2 * B4 - Rational(c6)) / 216;
  WeierstrassCurve r;
  r.a1 = Rational(mod(b2, BigInt(2)));
  r.a2 = (B2 - r.a1) / 4;
  r.a3 = Rational(mod(numerator_of(B6), BigInt(2)));
  r.a4 = (B4 - r.a1 * r.a3) / 2;
  r.a6 = (B6 - r.a3) / 4;
  if (!is_integral(r) || r.c4() != e.c4() || r.c6() != e.c6())
    throw ConvergenceError("normalization of the minimal model failed for " + to_string(e));
  // the shift between e and r (same c4, c6, so u = 1)
  const Rational s = (r.a1 - e.a1) / 2;
  const Rational rr = (r.a2 - e.a2 + s * e.a1 + s * s) / 3;
  const Rational t = (r.a3 - e.a3 - rr * e.a1) / 2;
  out.transform = compose(out.transform, {1, rr, s, t});
  out.curve = r;
  for (const auto& [p, k] : factorize(numerator_of(r.discriminant()))) {
    WeierstrassCurve tmp = r;
    auto loc = tate_local(tmp, p);
    if (tmp.discriminant() != r.discriminant()) throw ConvergenceError("model is not minimal at " + p.str());
    out.conductor *= boost::multiprecision::pow(p, static_cast<unsigned>(loc.f));
    out.local.push_back(loc);
  }
  return out;
}

inline WeierstrassCurve minimal_model(const WeierstrassCurve& e) { return minimal_model_data(e).curve; }

inline BigInt conductor(const WeierstrassCurve& e) { return minimal_model_data(e).conductor; }

}  // namespace rlab
