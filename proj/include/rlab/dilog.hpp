#pragma once

// The Bloch-Wigner dilogarithm D(z) = Im Li2(z) + arg(1-z) log|z|, the
// elliptic dilogarithm D^E(u) = sum_l D(z q^l) with z = exp(2 pi i u/omega1),
// and its linear extension to Z[E(C)]^-.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "rlab/divisor.hpp"
#include "rlab/periods.hpp"

namespace rlab {

namespace detail {

/// B_n/(n+1)! for n = 0..40 (odd n > 1 vanish), for Li2(z) = sum B_n w^(n+1)/(n+1)!, w = -log(1-z).
inline const std::array<long double, 41>& li2_bernoulli_coeffs() {
  static const std::array<long double, 41> c = [] {
    // Bernoulli numbers by the recurrence sum_{j<=m} C(m+1, j) B_j = 0
    std::array<long double, 42> B{};
    B[0] = 1;
    for (int m = 1; m <= 41; ++m) {
      long double s = 0, binom = 1;  // C(m+1, j)
      for (int j = 0; j < m; ++j) {
        s += binom * B[static_cast<std::size_t>(j)];
        binom = binom * (m + 1 - j) / (j + 1);
      }
      B[static_cast<std::size_t>(m)] = -s / (m + 1);
    }
    std::array<long double, 41> out{};
    long double fact = 1;
    for (int n = 0; n <= 40; ++n) {
      fact *= n + 1;
      out[static_cast<std::size_t>(n)] = B[static_cast<std::size_t>(n)] / fact;
    }
    return out;
  }();
  return c;
}

/// Li2 on |z| <= 1, Re z <= 1/2: the power series for |z| <= 1/2, otherwise
/// the Bernoulli series in -log(1-z), which there has |w| < 1.3.
inline cld li2_reduced(cld z) {
  if (std::abs(z) <= 0.5L) {
    cld s = 0, zn = z;
    for (int n = 1; n <= 64; ++n) {
      s += zn / static_cast<long double>(n) / static_cast<long double>(n);
      zn *= z;
    }
    return s;
  }
  const cld w = -std::log(1.0L - z);
  const auto& c = li2_bernoulli_coeffs();
  cld s = 0, wn = w;
  for (std::size_t n = 0; n < c.size(); ++n) {
    s += c[n] * wn;
    wn *= w;
  }
  return s;
}

}  // namespace detail

/// D(z), continuous on C u {infinity} and 0 at 0, 1, infinity. Reduced by
/// D(1/z) = -D(z) and D(1-z) = -D(z) to |z| <= 1, Re z <= 1/2.
inline long double bloch_wigner(cld z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return 0;
  if (z == cld(0) || z == cld(1)) return 0;
  long double sign = 1;
  if (std::abs(z) > 1) {
    z = 1.0L / z;
    sign = -sign;
  }
  if (z.real() > 0.5L) {
    z = 1.0L - z;
    sign = -sign;
  }
  if (z == cld(0)) return 0;
  const long double v = detail::li2_reduced(z).imag() + std::arg(1.0L - z) * std::log(std::abs(z));
  return sign * v;
}

struct EllipticDilogValue {
  long double value = 0;
  /// bound on the omitted terms |l| > L
  long double tail = 0;
  int terms = 0;
};

/// D^E at u with the lattice normalized by omega1: z = exp(2 pi i u/omega1),
/// summed over l until |q|^|l| drops below 1e-18 (times |z|^(+-1)).
inline EllipticDilogValue elliptic_dilog_detail(cld u, const PeriodLattice& L, long double cutoff = 1e-18L) {
  using R = long double;
  EllipticDilogValue out;
  auto [a, b] = lattice_coordinates(L, u);
  a = frac_part(a);
  b = frac_part(b);
  if (a == 0 && b == 0) return out;
  // beta in [0,1) keeps |z| in (|q|, 1]
  const cld zn = a + b * L.tau;
  const cld z = std::exp(cld(0, 2 * std::numbers::pi_v<R>) * zn);
  const R aq = std::abs(L.q);
  R sum = bloch_wigner(z);
  cld zp = z, zm = z;
  int l = 0;
  R last = 0;
  while (true) {
    ++l;
    zp *= L.q;
    zm /= L.q;
    const R tp = bloch_wigner(zp), tm = bloch_wigner(zm);
    sum += tp + tm;
    last = std::abs(zp) + 1 / std::abs(zm);
    if (last < cutoff || l > 100000) break;
  }
  out.value = sum;
  // |D(w)| <= c|w| log(e/|w|) for small |w|; the geometric tail after l
  out.tail = 4 * last * (1 + std::fabs(std::log(last))) * aq / (1 - aq);
  out.terms = 2 * l + 1;
  return out;
}

inline long double elliptic_dilog(cld u, const PeriodLattice& L) { return elliptic_dilog_detail(u, L).value; }

/// D^E at a point of the curve.
inline long double elliptic_dilog(const WeierstrassCurve& e, const CurvePoint& P, const PeriodLattice& L) {
  if (P.infinity) return 0;
  return elliptic_dilog(elliptic_log(e, P, L), L);
}

/// sum m D^E(P) over a class; each term uses its stored lattice coordinates.
inline long double dilog_of_class(const DivisorClass& c, const PeriodLattice& L) {
  long double s = 0;
  for (const auto& t : c.terms) s += static_cast<long double>(t.mult) * elliptic_dilog(t.alpha * L.omega1 + t.beta * L.omega2, L);
  return s;
}

}  // namespace rlab
