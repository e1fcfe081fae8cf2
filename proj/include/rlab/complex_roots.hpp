#pragma once

// Numeric roots of polynomials with complex coefficients: a stable quadratic
// formula and Aberth-Ehrlich simultaneous iteration for higher degrees.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "rlab/errors.hpp"
#include "rlab/upoly.hpp"

namespace rlab {

template <class Real>
using Complex = std::complex<Real>;

/// Roots of a*t^2 + b*t + c with a != 0, free of cancellation.
template <class Real>
std::array<Complex<Real>, 2> quadratic_roots(Complex<Real> a, Complex<Real> b, Complex<Real> c) {
  const Complex<Real> disc = std::sqrt(b * b - Real(4) * a * c);
  // pick the sign so that |b + sign*disc| is maximal
  const Complex<Real> q = std::real(std::conj(b) * disc) >= Real(0) ? Real(-0.5) * (b + disc)
                                                                     : Real(-0.5) * (b - disc);
  if (q == Complex<Real>(0)) return {Complex<Real>(0), Complex<Real>(0)};
  return {q / a, c / q};
}

template <class Real>
Complex<Real> horner(const std::vector<Complex<Real>>& c, Complex<Real> x) {
  Complex<Real> acc(0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

template <class Real>
struct RootSolveOptions {
  int max_iterations = 500;
  Real tolerance = std::numeric_limits<Real>::epsilon() * 8;
};

/// All roots (with multiplicity) of sum c[i] t^i; c.back() must be nonzero.
template <class Real>
std::vector<Complex<Real>> polynomial_roots(std::vector<Complex<Real>> c, RootSolveOptions<Real> opt = {}) {
  using C = Complex<Real>;
  while (!c.empty() && c.back() == C(0)) c.pop_back();
  if (c.size() < 2) return {};
  std::vector<C> roots;
  std::size_t zeros = 0;
  while (zeros < c.size() && c[zeros] == C(0)) ++zeros;
  roots.assign(zeros, C(0));
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(zeros));
  const int n = static_cast<int>(c.size()) - 1;
  if (n == 0) return roots;
  if (n == 1) {
    roots.push_back(-c[0] / c[1]);
    return roots;
  }
  if (n == 2) {
    auto q = quadratic_roots(c[2], c[1], c[0]);
    roots.insert(roots.end(), q.begin(), q.end());
    return roots;
  }

  std::vector<C> d(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) d[static_cast<std::size_t>(i - 1)] = c[static_cast<std::size_t>(i)] * Real(i);

  // initial guesses on a circle of the geometric-mean root radius
  Real radius = std::pow(std::abs(c[0] / c[static_cast<std::size_t>(n)]), Real(1) / Real(n));
  if (!(radius > 0) || !std::isfinite(radius)) radius = 1;
  std::vector<C> z(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Real ang = Real(2) * std::numbers::pi_v<Real> * Real(i) / Real(n) + Real(0.4);
    z[static_cast<std::size_t>(i)] = std::polar(radius, ang);
  }

  bool converged = false;
  for (int it = 0; it < opt.max_iterations && !converged; ++it) {
    converged = true;
    for (int i = 0; i < n; ++i) {
      auto& zi = z[static_cast<std::size_t>(i)];
      C p = horner(c, zi), dp = horner(d, zi);
      if (p == C(0)) continue;
      C ratio = p / dp;
      C sum(0);
      for (int j = 0; j < n; ++j)
        if (j != i) sum += C(1) / (zi - z[static_cast<std::size_t>(j)]);
      C step = ratio / (C(1) - ratio * sum);
      if (!std::isfinite(std::abs(step))) step = ratio;
      zi -= step;
      if (std::abs(step) > opt.tolerance * std::max(Real(1), std::abs(zi))) converged = false;
    }
  }
  if (!converged) {
    // a final residual check tolerates slow convergence at clustered roots
    Real scale = 0;
    for (const auto& v : c) scale = std::max(scale, std::abs(v));
    for (const auto& zi : z) {
      Real m = std::pow(std::max(Real(1), std::abs(zi)), Real(n));
      if (std::abs(horner(c, zi)) > std::sqrt(opt.tolerance) * scale * m)
        throw ConvergenceError("polynomial root iteration did not converge");
    }
  }
  roots.insert(roots.end(), z.begin(), z.end());
  return roots;
}

template <class Real>
std::vector<Complex<Real>> polynomial_roots(const QPoly& p) {
  return polynomial_roots<Real>(p.numeric_coeffs<Real>());
}

/// Newton polish of a simple root.
template <class Real>
Complex<Real> polish_root(const std::vector<Complex<Real>>& c, Complex<Real> z, int steps = 4) {
  std::vector<Complex<Real>> d;
  for (std::size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * Real(i));
  for (int s = 0; s < steps; ++s) {
    auto dp = horner(d, z);
    if (dp == Complex<Real>(0)) break;
    z -= horner(c, z) / dp;
  }
  return z;
}

/// Best rational approximation with bounded denominator (continued fractions).
inline Rational rational_approximation(long double x, long long max_den) {
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  long double v = x;
  for (int i = 0; i < 64; ++i) {
    long double a = std::floor(v);
    if (std::fabs(a) > 1e17L) break;
    long long ai = static_cast<long long>(a);
    long long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    if (q2 > max_den || q2 <= 0) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    long double frac = v - a;
    if (frac < 1e-18L) break;
    v = 1 / frac;
  }
  return Rational(p1, q1);
}

/// Exact rational roots with multiplicities, found by numeric location,
/// continued-fraction reconstruction and exact verification.
inline std::vector<std::pair<Rational, int>> rational_roots(const QPoly& p) {
  std::vector<std::pair<Rational, int>> out;
  if (p.degree() < 1) return out;
  for (auto& [factor, mult] : squarefree_decomposition(p)) {
    QPoly f = factor;
    if (f[0] == 0) {
      out.emplace_back(Rational(0), mult);
      f = f / QPoly({Rational(0), Rational(1)});
    }
    if (f.degree() < 1) continue;
    auto approx = polynomial_roots<long double>(f);
    std::vector<Rational> found;
    for (const auto& z : approx) {
      if (std::fabs(z.imag()) > 1e-6L * std::max(1.0L, std::abs(z))) continue;
      for (long long den : {1000000000LL, 1000000LL, 1000LL}) {
        Rational r = rational_approximation(z.real(), den);
        if (f(r) == 0 && std::find(found.begin(), found.end(), r) == found.end()) {
          found.push_back(r);
          break;
        }
      }
    }
    for (const auto& r : found) out.emplace_back(r, mult);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace rlab
