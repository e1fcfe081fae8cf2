#pragma once

// Hasse-Weil L-series of E/Q: traces of Frobenius (character sums for small
// p, baby-step giant-step with Mestre's twist argument for large p), the
// Dirichlet coefficients a_n, root number detection and L(E,2), L'(E,0) from
// the functional equation.

#include <boost/math/special_functions/expint.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iterator>
#include <map>
#include <numbers>
#include <random>
#include <thread>
#include <tuple>
#include <vector>

#include "rlab/tate.hpp"

namespace rlab {

namespace detail {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

inline u64 reduce(const Rational& x, u64 p) {
  return static_cast<u64>(mod(numerator_of(x), BigInt(p)));
}

/// Tonelli-Shanks; a must be a nonzero square mod the odd prime p.
inline u64 sqrt_mod(u64 a, u64 p) {
  if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
  u64 q = p - 1;
  int s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  u64 z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  u64 m = static_cast<u64>(s), c = powmod(z, q, p), t = powmod(a, q, p), r = powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    u64 i = 0, tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, p);
      ++i;
    }
    u64 b = c;
    for (u64 j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return r;
}

/// Affine arithmetic on y^2 = x^3 + A x + B over F_p.
struct ShortCurveModP {
  u64 p, A, B;
  struct Pt {
    bool inf = true;
    u64 x = 0, y = 0;
    bool operator==(const Pt&) const = default;
  };
  u64 inv(u64 a) const {
    // extended Euclid
    i64 r0 = static_cast<i64>(p), r1 = static_cast<i64>(a), t0 = 0, t1 = 1;
    while (r1) {
      const i64 q = r0 / r1;
      std::tie(r0, r1) = std::pair(r1, r0 - q * r1);
      std::tie(t0, t1) = std::pair(t1, t0 - q * t1);
    }
    return static_cast<u64>(t0 < 0 ? t0 + static_cast<i64>(p) : t0);
  }
  Pt add(const Pt& P, const Pt& Q) const {
    if (P.inf) return Q;
    if (Q.inf) return P;
    u64 lam;
    if (P.x == Q.x) {
      if ((P.y + Q.y) % p == 0) return {};
      lam = mulmod((3 * mulmod(P.x, P.x, p) + A) % p, inv(2 * P.y % p), p);
    } else {
      lam = mulmod((Q.y + p - P.y) % p, inv((Q.x + p - P.x) % p), p);
    }
    const u64 x = (mulmod(lam, lam, p) + 2 * p - P.x - Q.x) % p;
    const u64 y = (mulmod(lam, (P.x + p - x) % p, p) + p - P.y) % p;
    return {false, x, y};
  }
  Pt neg(const Pt& P) const { return P.inf ? P : Pt{false, P.x, (p - P.y) % p}; }
  Pt mul(Pt P, i64 n) const {
    if (n < 0) {
      P = neg(P);
      n = -n;
    }
    Pt r;
    while (n) {
      if (n & 1) r = add(r, P);
      P = add(P, P);
      n >>= 1;
    }
    return r;
  }
  u64 rhs(u64 x) const { return (mulmod(mulmod(x, x, p), x, p) + mulmod(A, x, p) + B) % p; }
};

/// The a in [-W, W] with a P = (p+1) P, by baby steps j P (0 <= j < m) and
/// giant steps of size m.
inline std::vector<i64> bsgs_traces(const ShortCurveModP& E, const ShortCurveModP::Pt& P, i64 W) {
  const i64 m = static_cast<i64>(std::ceil(std::sqrt(static_cast<double>(2 * W + 1))));
  std::vector<std::pair<ShortCurveModP::Pt, i64>> baby;
  baby.reserve(static_cast<std::size_t>(m));
  ShortCurveModP::Pt cur;
  for (i64 j = 0; j < m; ++j) {
    baby.push_back({cur, j});
    cur = E.add(cur, P);
  }
  auto key = [](const ShortCurveModP::Pt& a) { return std::tuple(a.inf ? 0 : 1, a.x, a.y); };
  std::sort(baby.begin(), baby.end(), [&](const auto& a, const auto& b) { return key(a.first) < key(b.first); });
  const auto Q = E.mul(P, static_cast<i64>(E.p + 1));
  const auto step = E.neg(E.mul(P, m));
  // R_i = Q - (-W + i m) P
  auto R = E.add(Q, E.mul(P, W));
  std::vector<i64> out;
  for (i64 i = 0; -W + i * m <= W; ++i) {
    auto lo = std::lower_bound(baby.begin(), baby.end(), R,
                               [&](const auto& a, const ShortCurveModP::Pt& v) { return key(a.first) < key(v); });
    for (; lo != baby.end() && lo->first == R; ++lo) {
      const i64 a = -W + i * m + lo->second;
      if (a <= W) out.push_back(a);
    }
    R = E.add(R, step);
  }
  return out;
}

inline ShortCurveModP::Pt random_point(const ShortCurveModP& E, std::mt19937_64& rng) {
  std::uniform_int_distribution<u64> dist(0, E.p - 1);
  while (true) {
    const u64 x = dist(rng), v = E.rhs(x);
    if (v == 0) return {false, x, 0};
    if (powmod(v, (E.p - 1) / 2, E.p) == 1) return {false, x, sqrt_mod(v, E.p)};
  }
}

}  // namespace detail

/// a_p = p + 1 - #E(F_p) for a prime p of good reduction of the integral
/// model e, by the character sum -sum chi(4x^3 + b2 x^2 + 2 b4 x + b6).
inline long trace_by_character_sum(const WeierstrassCurve& e, unsigned long p) {
  using detail::u64;
  const u64 P = p;
  if (p == 2) {
    // count directly; unsigned wraparound preserves parity
    long count = 1;
    const u64 a1 = detail::reduce(e.a1, 2), a2 = detail::reduce(e.a2, 2), a3 = detail::reduce(e.a3, 2),
              a4 = detail::reduce(e.a4, 2), a6 = detail::reduce(e.a6, 2);
    for (u64 x = 0; x < 2; ++x)
      for (u64 y = 0; y < 2; ++y)
        if ((y * y + a1 * x * y + a3 * y - x * x * x - a2 * x * x - a4 * x - a6) % 2 == 0) ++count;
    return static_cast<long>(p) + 1 - count;
  }
  std::vector<signed char> chi(P, -1);
  chi[0] = 0;
  for (u64 y = 1; y < P; ++y) chi[detail::mulmod(y, y, P)] = 1;
  const u64 b2 = detail::reduce(e.b2(), P), b4 = detail::reduce(e.b4(), P), b6 = detail::reduce(e.b6(), P);
  long s = 0;
  for (u64 x = 0; x < P; ++x) {
    const u64 v = ((4 * x % P * x % P * x + b2 * x % P * x + 2 * b4 * x + b6) % P);
    s += chi[v];
  }
  return -s;
}

/// a_p for a good prime p >= 5 by baby-step giant-step on random points of the
/// short model y^2 = x^3 - 27 c4 x - 54 c6; if the group order is still
/// ambiguous the quadratic twist is used as well.
inline long trace_by_bsgs(const WeierstrassCurve& e, unsigned long p, std::uint64_t seed = 1) {
  using namespace detail;
  const u64 P = p;
  const u64 A = (P - reduce(27 * e.c4(), P)) % P, B = (P - reduce(54 * e.c6(), P)) % P;
  const ShortCurveModP E{P, A, B};
  // twist by a non-residue d: y^2 = x^3 + A d^2 x + B d^3
  u64 d = 2;
  while (powmod(d, (P - 1) / 2, P) != P - 1) ++d;
  const ShortCurveModP T{P, mulmod(A, mulmod(d, d, P), P), mulmod(B, mulmod(d, mulmod(d, d, P), P), P)};
  const i64 W = static_cast<i64>(std::floor(2 * std::sqrt(static_cast<double>(p))));
  std::mt19937_64 rng(seed ^ (p * 0x9E3779B97F4A7C15ULL));
  std::vector<i64> cand;
  for (int round = 0; round < 64 && (round == 0 || cand.size() > 1); ++round) {
    const bool twist = round % 2 == 1;
    const auto& C = twist ? T : E;
    const auto pt = random_point(C, rng);
    std::vector<i64> hit;
    for (i64 a : bsgs_traces(C, pt, W)) hit.push_back(twist ? -a : a);
    std::sort(hit.begin(), hit.end());
    if (round == 0) {
      cand = std::move(hit);
      continue;
    }
    std::vector<i64> next;
    std::set_intersection(cand.begin(), cand.end(), hit.begin(), hit.end(), std::back_inserter(next));
    cand = std::move(next);
  }
  if (cand.size() != 1) throw ConvergenceError("point counting did not isolate the group order at p = " + std::to_string(p));
  return static_cast<long>(*cand.begin());
}

/// Primes up to n by the sieve of Eratosthenes.
inline std::vector<unsigned long> primes_up_to(unsigned long n) {
  std::vector<bool> comp(n + 1, false);
  std::vector<unsigned long> out;
  for (unsigned long i = 2; i <= n; ++i) {
    if (comp[i]) continue;
    out.push_back(i);
    for (unsigned long j = i * i; j <= n; j += i) comp[j] = true;
  }
  return out;
}

struct LSeriesOptions {
  /// character sums below this prime, baby-step giant-step above
  unsigned long bsgs_threshold = 2000;
  unsigned threads = 1;
};

/// Minimal model, conductor, local data and Dirichlet coefficients.
class LSeries {
 public:
  explicit LSeries(const WeierstrassCurve& e, LSeriesOptions opt = {}) : opt_(opt), data_(minimal_model_data(e)) {
    for (const auto& loc : data_.local) bad_[static_cast<unsigned long>(loc.p)] = loc.bad_ap;
  }

  const WeierstrassCurve& minimal() const { return data_.curve; }
  const MinimalModel& data() const { return data_; }
  long conductor() const { return static_cast<long>(data_.conductor); }

  long ap(unsigned long p) const {
    if (auto it = bad_.find(p); it != bad_.end()) return it->second;
    if (p < opt_.bsgs_threshold || p < 5) return trace_by_character_sum(data_.curve, p);
    return trace_by_bsgs(data_.curve, p);
  }

  /// a_1..a_n (index 0 unused). Traces are computed in parallel over primes;
  /// the assembly is sequential, so the result does not depend on threads.
  const std::vector<long>& coefficients(std::size_t n) {
    if (an_.size() > n) return an_;
    const auto primes = primes_up_to(n);
    std::vector<long> ap(primes.size());
    const unsigned T = std::max(1u, opt_.threads);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < T; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t i = t; i < primes.size(); i += T) ap[i] = this->ap(primes[i]);
      });
    for (auto& th : pool) th.join();
    std::vector<long> a(n + 1, 0);
    std::vector<unsigned long> spf(n + 1, 0);
    for (std::size_t i = 0; i < primes.size(); ++i) {
      const unsigned long p = primes[i];
      for (unsigned long j = p; j <= n; j += p)
        if (!spf[j]) spf[j] = p;
      // prime powers
      const bool bad = bad_.count(p) > 0;
      long prev = 1, cur = ap[i];
      for (unsigned long q = p;; q *= p) {
        a[q] = cur;
        if (q > n / p) break;
        const long next = bad ? cur * ap[i] : ap[i] * cur - static_cast<long>(p) * prev;
        prev = cur;
        cur = next;
      }
    }
    if (n >= 1) a[1] = 1;
    for (std::size_t m = 2; m <= n; ++m) {
      const unsigned long p = spf[m];
      std::size_t q = p, rest = m / p;
      while (rest % p == 0) {
        rest /= p;
        q *= p;
      }
      if (rest != 1) a[m] = a[q] * a[rest];
    }
    an_ = std::move(a);
    return an_;
  }

 private:
  LSeriesOptions opt_;
  MinimalModel data_;
  std::map<unsigned long, long> bad_;
  std::vector<long> an_;
};

struct LSeriesData {
  WeierstrassCurve curve;
  long conductor = 0;
  int root_number = 0;
  /// a_0 (unused, 0) .. a_{n_max}
  std::vector<long> a;
  std::vector<LocalReduction> local;
};

struct LValue {
  long double value = 0;
  /// bound on the omitted terms
  long double tail = 0;
  int terms = 0;
};

namespace detail {

/// Terms needed for exp(-2 pi n x/sqrt N), x = min(A, 1/A), to fall below 1e-22.
inline std::size_t lseries_terms(long N, long double A = 1) {
  const long double c = 2 * std::numbers::pi_v<long double> / std::sqrt(static_cast<long double>(N)) * std::min(A, 1 / A);
  return static_cast<std::size_t>(std::ceil(52 / c)) + 10;
}

/// Tail bound using |a_n| <= 2n and exp(-c n) decay of both kernels.
inline long double exp_tail(long double c, std::size_t n) {
  const long double x = c * static_cast<long double>(n);
  return 4 * static_cast<long double>(n) * std::exp(-x) / (1 - std::exp(-c)) * (1 + 1 / (x * x));
}

inline std::size_t usable_terms(const LSeriesData& d, long double A = 1) {
  if (d.a.size() < 2) throw DomainError("no L-series coefficients");
  return std::min(d.a.size() - 1, lseries_terms(d.conductor, A));
}

}  // namespace detail

/// Lambda(s) = N^(s/2) (2 pi)^-s Gamma(s) L(E,s) at s = 1 split at A:
/// sum a_n [ (sqrt N/2 pi n) e^(-2 pi n A/sqrt N) + eps (sqrt N/2 pi n) e^(-2 pi n/(A sqrt N)) ].
inline long double lambda_at_1(const LSeriesData& d, int eps, long double A) {
  using R = long double;
  const R sN = std::sqrt(static_cast<R>(d.conductor)), twopi = 2 * std::numbers::pi_v<R>;
  const std::size_t n = detail::usable_terms(d, A);
  R s = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    const R x = twopi * static_cast<R>(k) / sN;
    s += static_cast<R>(d.a[k]) / x * (std::exp(-x * A) + eps * std::exp(-x / A));
  }
  return s;
}

struct RootNumber {
  int eps = 0;
  /// |Lambda_eps(1;1) - Lambda_eps(1;1.2)| for eps = +1, -1
  long double mismatch_plus = 0, mismatch_minus = 0;
};

/// The sign of the functional equation: only the true sign makes Lambda(1)
/// independent of the splitting parameter A.
inline RootNumber detect_root_number(const LSeriesData& d) {
  RootNumber r;
  r.mismatch_plus = std::fabs(lambda_at_1(d, 1, 1) - lambda_at_1(d, 1, 1.2L));
  r.mismatch_minus = std::fabs(lambda_at_1(d, -1, 1) - lambda_at_1(d, -1, 1.2L));
  const long double lo = std::min(r.mismatch_plus, r.mismatch_minus), hi = std::max(r.mismatch_plus, r.mismatch_minus);
  if (!(lo < 1e-12L && hi > 1e-3L)) throw ConvergenceError("root number undetermined");
  r.eps = r.mismatch_plus < r.mismatch_minus ? 1 : -1;
  return r;
}

/// Minimal model, conductor, a_1..a_{n_max} and the detected root number.
inline LSeriesData lseries_data(const WeierstrassCurve& e, std::size_t n_max = 10000, LSeriesOptions opt = {}) {
  LSeries L(e, opt);
  LSeriesData d;
  d.curve = L.minimal();
  d.conductor = L.conductor();
  d.local = L.data().local;
  d.a = L.coefficients(n_max);
  d.a.resize(n_max + 1);
  d.root_number = detect_root_number(d).eps;
  return d;
}

/// Lambda(2) = sum a_n [ x_n^-2 Gamma(2, x_n) + eps E1(x_n) ], x_n = 2 pi n/sqrt N,
/// over the first `terms` coefficients (0: as many as the decay needs).
inline LValue lambda_at_2(const LSeriesData& d, std::size_t terms = 0, long double tolerance = 1e-15L) {
  using R = long double;
  if (d.root_number != 1 && d.root_number != -1) throw ConvergenceError("root number undetermined");
  const R sN = std::sqrt(static_cast<R>(d.conductor)), twopi = 2 * std::numbers::pi_v<R>;
  const std::size_t n = terms ? std::min(terms, d.a.size() - 1) : detail::usable_terms(d);
  LValue out;
  for (std::size_t k = 1; k <= n; ++k) {
    const R x = twopi * static_cast<R>(k) / sN;
    out.value += static_cast<R>(d.a[k]) * ((1 + x) * std::exp(-x) / (x * x) + d.root_number * boost::math::expint(1, x));
  }
  out.terms = static_cast<int>(n);
  out.tail = detail::exp_tail(twopi / sN, n + 1);
  if (terms == 0 && out.tail > tolerance) throw ConvergenceError("insufficient n_max for L(E,2)");
  return out;
}

/// L(E,2) = 4 pi^2 Lambda(2)/N.
inline LValue l_at_2(const LSeriesData& d, std::size_t terms = 0) {
  auto v = lambda_at_2(d, terms);
  const long double c = 4 * std::numbers::pi_v<long double> * std::numbers::pi_v<long double> / d.conductor;
  return {v.value * c, v.tail * c, v.terms};
}

/// L'(E,0) = eps Lambda(2), from Lambda(s) = eps Lambda(2 - s) and the pole of Gamma at 0.
inline LValue l_prime_at_0(const LSeriesData& d, std::size_t terms = 0) {
  auto v = lambda_at_2(d, terms);
  return {d.root_number * v.value, v.tail, v.terms};
}

}  // namespace rlab
