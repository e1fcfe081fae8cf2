#pragma once

// Mahler measures by Jensen's formula: exact root sums in one variable and a
// breakpoint-split adaptive quadrature over |x| = 1 in two.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "rlab/complex_roots.hpp"
#include "rlab/errors.hpp"
#include "rlab/laurent_poly.hpp"
#include "rlab/quadrature.hpp"
#include "rlab/torus.hpp"

namespace rlab {

template <class Real>
struct YRoots {
  std::vector<Complex<Real>> roots;
  /// roots lost at infinity because the leading coefficient vanished at x0
  int dropped = 0;
};

template <class Real>
YRoots<Real> roots_in_y(const BiPoly& p, Complex<Real> x0) {
  auto c = eval_y_coeffs<Real>(p, x0);
  YRoots<Real> out;
  while (!c.empty() && c.back() == Complex<Real>(0)) {
    c.pop_back();
    ++out.dropped;
  }
  if (c.empty()) throw DomainError("polynomial vanishes identically at this x");
  if (c.size() == 3) {
    auto q = quadratic_roots(c[2], c[1], c[0]);
    out.roots.assign(q.begin(), q.end());
  } else {
    out.roots = polynomial_roots<Real>(c);
  }
  return out;
}

template <class Real>
YRoots<Real> roots_in_y(const LaurentPoly& p, Complex<Real> x0) {
  return roots_in_y<Real>(to_bipoly(p), x0);
}

namespace detail {

template <class Real>
Real log_plus(Real v) {
  return v > 1 ? std::log(v) : Real(0);
}

/// log|a_d(x0)| + sum_k log+|y_k(x0)|, written so that it stays finite and
/// accurate when a_d(x0) is tiny (a root escaping to infinity).
template <class Real>
Real jensen_integrand(const BiPoly& p, Complex<Real> x0) {
  auto c = eval_y_coeffs<Real>(p, x0);
  while (!c.empty() && c.back() == Complex<Real>(0)) c.pop_back();
  if (c.empty()) return -std::numeric_limits<Real>::infinity();
  if (c.size() == 1) return std::log(std::abs(c[0]));
  if (c.size() == 3) {
    const Complex<Real> a = c[2], b = c[1], cc = c[0];
    const Complex<Real> disc = std::sqrt(b * b - Real(4) * a * cc);
    const Complex<Real> q = std::real(std::conj(b) * disc) >= 0 ? Real(-0.5) * (b + disc) : Real(-0.5) * (b - disc);
    if (q == Complex<Real>(0)) return std::log(std::abs(a));
    const Real la = std::log(std::abs(a)), lq = std::log(std::abs(q)), lc = std::log(std::abs(cc));
    return std::max(la, lq) + std::max(Real(0), lc - lq);
  }
  Real sum = std::log(std::abs(c.back()));
  for (const auto& r : polynomial_roots<Real>(c)) sum += log_plus(std::abs(r));
  return sum;
}

template <class Real>
int count_outside(const BiPoly& p, Complex<Real> x0) {
  int n = 0;
  const auto r = roots_in_y<Real>(p, x0);
  for (const auto& y : r.roots)
    if (std::abs(y) > 1) ++n;
  return n + r.dropped;
}

}  // namespace detail

struct MahlerValue {
  double value = 0;
  double error = 0;
};

/// m(p) for p in one variable: log|leading| + sum log+|root|. The error is a
/// first-order bound from the root residuals.
inline MahlerValue mahler_1d(const QPoly& p) {
  if (p.is_zero()) throw DomainError("Mahler measure of the zero polynomial");
  MahlerValue out;
  out.value = std::log(std::fabs(to_real<double>(p.leading())));
  if (p.degree() < 1) return out;
  const auto c = p.numeric_coeffs<long double>();
  const auto dc = p.derivative().numeric_coeffs<long double>();
  long double sum = 0, err = 0;
  for (auto r : polynomial_roots<long double>(c)) {
    r = polish_root(c, r, 2);
    const long double mod = std::abs(r);
    if (mod > 1) sum += std::log(mod);
    const auto d = horner(dc, r);
    if (d != std::complex<long double>(0) && mod > 0) err += std::abs(horner(c, r) / d) / mod;
  }
  out.value += static_cast<double>(sum);
  out.error = static_cast<double>(err) + 4 * std::numeric_limits<double>::epsilon() * std::fabs(out.value);
  return out;
}

inline MahlerValue mahler_1d(const LaurentPoly& p) { return mahler_1d(p.as_univariate()); }

struct MahlerOptions {
  double tolerance = 1e-11;
  int scan_nodes = 2048;
  double bisection_tolerance = 1e-13;
  long max_evaluations = 4'000'000;
  /// include exact torus-intersection parameters among the breakpoints
  bool torus_breakpoints = true;
  bool throw_on_failure = true;
};

struct MahlerResult {
  double value = 0;
  double error = 0;
  long evaluations = 0;
  bool converged = true;
  std::vector<double> breakpoints;
};

/// Parameters t in [0,1) where the number of y-roots outside the unit circle
/// can change along x = exp(2 pi i t): exact torus intersections, unit-circle
/// zeros of the leading coefficient, and count changes located by scanning
/// and bisection.
template <class Real = double>
std::vector<Real> mahler_breakpoints(const LaurentPoly& p, const MahlerOptions& opt = {}) {
  const BiPoly bp = to_bipoly(p);
  const Real two_pi = 2 * std::numbers::pi_v<Real>;
  auto at = [&](Real t) { return std::polar(Real(1), two_pi * t); };
  std::vector<Real> pts;

  if (opt.torus_breakpoints) {
    const auto tor = torus_intersections(p);
    if (!tor.degenerate)
      for (const auto& q : tor.points) pts.push_back(static_cast<Real>(q.t));
  }
  if (!bp.empty() && bp.back().degree() > 0) {
    for (auto r : polynomial_roots<long double>(bp.back().numeric_coeffs<long double>()))
      if (std::fabs(std::abs(r) - 1) < 1e-9L) pts.push_back(static_cast<Real>(unit_circle_parameter(r)));
  }

  const int n = opt.scan_nodes;
  const Real offset = Real(0.3711);
  auto node = [&](int i) { return (Real(i) + offset) / Real(n); };
  int prev = detail::count_outside<Real>(bp, at(node(0)));
  for (int i = 1; i <= n; ++i) {
    const Real t1 = i < n ? node(i) : node(0) + 1;
    const int cur = detail::count_outside<Real>(bp, at(t1));
    if (cur != prev) {
      Real lo = node(i - 1), hi = t1;
      while (hi - lo > opt.bisection_tolerance) {
        const Real mid = (lo + hi) / 2;
        if (detail::count_outside<Real>(bp, at(mid)) == prev) lo = mid;
        else hi = mid;
      }
      Real t = (lo + hi) / 2;
      if (t >= 1) t -= 1;
      pts.push_back(t);
    }
    prev = cur;
  }
  std::sort(pts.begin(), pts.end());
  std::vector<Real> out;
  for (Real t : pts) {
    // the scan rediscovers torus parameters to bisection accuracy
    if (!out.empty() && t - out.back() < Real(10) * Real(opt.bisection_tolerance)) continue;
    out.push_back(t);
  }
  return out;
}

/// m(p) = integral over t in [0,1] of log|a_d(x)| + sum_k log+|y_k(x)|,
/// x = exp(2 pi i t), by adaptive Gauss-Legendre panels split at the
/// breakpoints. The error estimate is the summed panel refinement difference.
template <class Real = double>
MahlerResult mahler_2d(const LaurentPoly& p, const MahlerOptions& opt = {}) {
  if (p.is_zero()) throw DomainError("Mahler measure of the zero polynomial");
  if (p.nvars() != 2) throw DomainError("mahler_2d needs two variables");
  MahlerResult out;
  const LaurentPoly cleared = p.clear_denominators().first;
  if (!cleared.occurs(1)) {
    const auto v = mahler_1d(cleared);
    out.value = v.value;
    out.error = v.error;
    return out;
  }
  const BiPoly bp = to_bipoly(cleared);
  auto bps = mahler_breakpoints<Real>(cleared, opt);
  std::vector<Real> pts{Real(0)};
  for (Real t : bps)
    if (t > 0 && t < 1) pts.push_back(t);
  pts.push_back(Real(1));
  const Real two_pi = 2 * std::numbers::pi_v<Real>;
  auto f = [&](Real t) { return detail::jensen_integrand<Real>(bp, std::polar(Real(1), two_pi * t)); };
  AdaptiveOptions aopt;
  aopt.tolerance = opt.tolerance;
  aopt.max_evaluations = opt.max_evaluations;
  const auto r = integrate_segments<Real>(f, pts, aopt);
  out.value = static_cast<double>(r.value);
  out.error = r.error;
  out.evaluations = r.evaluations;
  out.converged = r.converged;
  for (Real t : bps) out.breakpoints.push_back(static_cast<double>(t));
  if (!out.converged && opt.throw_on_failure)
    throw ConvergenceError("Mahler quadrature did not reach the tolerance within the budget");
  return out;
}

}  // namespace rlab
