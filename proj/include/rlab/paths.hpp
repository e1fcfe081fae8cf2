#pragma once

// Deninger paths {(x,y) : x on a circle, |y| >= 1} on plane curves, the
// regulator form eta(f,g) integrated along them, and loop integrals of
// holomorphic differentials over the same cycles.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "rlab/complex_roots.hpp"
#include "rlab/errors.hpp"
#include "rlab/families.hpp"
#include "rlab/laurent_poly.hpp"
#include "rlab/mahler.hpp"
#include "rlab/quadrature.hpp"
#include "rlab/torus.hpp"

namespace rlab {

/// x(t) = center + radius * exp(2 pi i t), t in [0,1). Center and radius are
/// rational so that the curve can be moved exactly onto the unit circle.
struct CirclePath {
  Rational center = 0;
  Rational radius = 1;
  std::vector<double> samples;
  std::vector<double> breakpoints;

  static CirclePath make(Rational center, Rational radius, int nsamples = 256) {
    if (radius <= 0) throw DomainError("circle radius must be positive");
    CirclePath c{std::move(center), std::move(radius), {}, {}};
    for (int i = 0; i < nsamples; ++i) c.samples.push_back(static_cast<double>(i) / nsamples);
    return c;
  }
  static CirclePath unit(int nsamples = 256) { return make(0, 1, nsamples); }

  template <class Real>
  Complex<Real> point(Real t) const {
    return to_real<Real>(center) + to_real<Real>(radius) * std::polar(Real(1), 2 * std::numbers::pi_v<Real> * t);
  }
  /// dx/dt
  template <class Real>
  Complex<Real> velocity(Real t) const {
    const Real two_pi = 2 * std::numbers::pi_v<Real>;
    return Complex<Real>(0, two_pi) * to_real<Real>(radius) * std::polar(Real(1), two_pi * t);
  }
};

/// p(center + radius * X, y) with denominators cleared: the curve seen from
/// the unit circle |X| = 1.
inline LaurentPoly curve_on_contour(const LaurentPoly& p, const CirclePath& c) {
  const LaurentPoly cleared = p.clear_denominators().first;
  if (c.center == 0 && c.radius == 1) return cleared;
  return cleared.substitute_affine("x", c.radius, c.center).clear_denominators().first;
}

struct DeningerPath {
  CirclePath base;
  LaurentPoly curve;
  /// per sample t: the y-roots with |y| >= 1, ordered consistently along t
  std::vector<std::vector<std::complex<double>>> branch;
  bool closed = false;
  /// points of the curve with x on the contour and |y| = 1 (for the unit
  /// circle these are the torus intersections), in original coordinates
  std::vector<TorusPoint> torus_intersections;
  /// parameters where two y-roots collide on the contour
  std::vector<double> collisions;
  /// endpoints of path pieces that are not matched by another piece
  std::vector<std::pair<double, std::complex<double>>> boundary;
  bool degenerate = false;
  std::string message;
};

namespace detail {

/// Reorder `next` to follow `prev` by minimal total distance (exhaustive for
/// up to 6 roots, greedy above).
template <class Real>
std::vector<Complex<Real>> match_roots(const std::vector<Complex<Real>>& prev, std::vector<Complex<Real>> next) {
  if (prev.size() != next.size() || prev.empty()) return next;
  const std::size_t n = next.size();
  if (n <= 6) {
    std::vector<std::size_t> perm(n), best;
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    Real best_cost = std::numeric_limits<Real>::infinity();
    do {
      Real cost = 0;
      for (std::size_t i = 0; i < n; ++i) cost += std::abs(prev[i] - next[perm[i]]);
      if (cost < best_cost) {
        best_cost = cost;
        best = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::vector<Complex<Real>> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = next[best[i]];
    return out;
  }
  std::vector<Complex<Real>> out;
  for (const auto& p : prev) {
    auto it = std::min_element(next.begin(), next.end(),
                               [&](const auto& a, const auto& b) { return std::abs(a - p) < std::abs(b - p); });
    out.push_back(*it);
    next.erase(it);
  }
  return out;
}

/// Unit-circle parameters of the zeros of the y-discriminant.
inline std::vector<double> collision_parameters(const BiPoly& bp) {
  std::vector<double> out;
  if (bp.size() < 3) return out;
  const QPoly disc = discriminant_y(bp);
  if (disc.is_zero()) return out;
  const QPoly sf = squarefree_part(disc);
  if (sf.degree() < 1) return out;
  const auto c = sf.numeric_coeffs<long double>();
  for (auto r : polynomial_roots<long double>(c)) {
    r = polish_root(c, r);
    if (std::fabs(std::abs(r) - 1) < 1e-9L) out.push_back(static_cast<double>(unit_circle_parameter(r)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::complex<double>> outside_roots(const BiPoly& bp, double t) {
  const auto x = std::polar(1.0, 2 * std::numbers::pi * t);
  std::vector<std::complex<double>> out;
  for (const auto& y : roots_in_y<double>(bp, x).roots)
    if (std::abs(y) >= 1) out.push_back(y);
  return out;
}

}  // namespace detail

/// Branch-tracked Deninger path over the contour. Closedness is decided at
/// every parameter where the set of branches with |y| >= 1 can change
/// (exact contour/torus intersections, collisions, count changes, and the
/// seam t = 0): the pieces ending there from the left must continue to the
/// right at the same points.
inline DeningerPath deninger_path(const LaurentPoly& p, CirclePath contour) {
  DeningerPath out;
  out.curve = p;
  const LaurentPoly q = curve_on_contour(p, contour);
  if (!q.occurs(1)) throw DomainError("curve does not depend on y");
  const BiPoly bp = to_bipoly(q);

  const auto tor = torus_intersections(q);
  out.degenerate = tor.degenerate;
  out.message = tor.message;
  for (auto tp : tor.points) {
    tp.x = to_real<long double>(contour.center) + to_real<long double>(contour.radius) * tp.x;
    if (tp.exact) tp.exact_x = contour.center + contour.radius * tp.exact_x;
    out.torus_intersections.push_back(tp);
  }
  out.collisions = detail::collision_parameters(bp);

  MahlerOptions mopt;
  mopt.torus_breakpoints = false;
  std::vector<double> special{0.0};
  for (const auto& tp : tor.points) special.push_back(static_cast<double>(tp.t));
  for (double t : out.collisions) special.push_back(t);
  for (double t : mahler_breakpoints<double>(q, mopt)) special.push_back(t);
  std::sort(special.begin(), special.end());
  std::vector<double> uniq;
  for (double t : special)
    if (uniq.empty() || t - uniq.back() > 1e-11) uniq.push_back(t);
  if (uniq.size() > 1 && 1.0 - uniq.back() < 1e-11) uniq.pop_back();
  contour.breakpoints.clear();
  for (double t : uniq)
    if (t > 0) contour.breakpoints.push_back(t);

  // branch samples
  std::vector<std::complex<double>> prev;
  for (double t : contour.samples) {
    auto roots = detail::outside_roots(bp, t);
    roots = detail::match_roots<double>(prev, roots);
    out.branch.push_back(roots);
    prev = roots;
  }

  // boundary cancellation
  double gap = 1;
  for (std::size_t i = 0; i < uniq.size(); ++i) {
    const double next = i + 1 < uniq.size() ? uniq[i + 1] : uniq[0] + 1;
    gap = std::min(gap, next - uniq[i]);
  }
  const double delta = std::min(1e-6, gap / 4);
  const double match_tol = 50 * std::sqrt(delta);
  for (double ts : uniq) {
    double tl = ts - delta, tr = ts + delta;
    if (tl < 0) tl += 1;
    auto left = detail::outside_roots(bp, tl), right = detail::outside_roots(bp, tr);
    auto unmatched = [&](std::vector<std::complex<double>> from, std::vector<std::complex<double>> to) {
      for (const auto& y : from) {
        auto it = std::min_element(to.begin(), to.end(),
                                   [&](const auto& a, const auto& b) { return std::abs(a - y) < std::abs(b - y); });
        // branches through a pole of the leading coefficient meet at y = infinity
        auto chordal = [](std::complex<double> a, std::complex<double> b) {
          return std::abs(a - b) / std::sqrt((1 + std::norm(a)) * (1 + std::norm(b)));
        };
        if (it == to.end() || (std::abs(*it - y) > match_tol * std::max(1.0, std::abs(y)) &&
                               chordal(*it, y) > match_tol * match_tol))
          out.boundary.emplace_back(ts, y);
        else
          to.erase(it);
      }
    };
    unmatched(left, right);
    unmatched(right, left);
  }
  out.closed = out.boundary.empty();
  out.base = std::move(contour);
  return out;
}

/// A rational function num/den in x, y.
struct RationalFunction2 {
  LaurentPoly num, den;

  RationalFunction2(LaurentPoly n, LaurentPoly d = LaurentPoly::constant(1)) : num(std::move(n)), den(std::move(d)) {
    if (num.is_zero() || den.is_zero()) throw DomainError("symbol entries must be nonzero rational functions");
    num_x = num.derivative("x");
    num_y = num.derivative("y");
    den_x = den.derivative("x");
    den_y = den.derivative("y");
  }

  template <class Real>
  Complex<Real> value(Complex<Real> x, Complex<Real> y) const {
    return num.eval<Real>({x, y}) / den.eval<Real>({x, y});
  }
  /// (d log f/dx, d log f/dy)
  template <class Real>
  std::pair<Complex<Real>, Complex<Real>> dlog(Complex<Real> x, Complex<Real> y) const {
    const auto n = num.eval<Real>({x, y}), d = den.eval<Real>({x, y});
    return {num_x.eval<Real>({x, y}) / n - den_x.eval<Real>({x, y}) / d,
            num_y.eval<Real>({x, y}) / n - den_y.eval<Real>({x, y}) / d};
  }

  LaurentPoly num_x, num_y, den_x, den_y;
};

struct SymbolPair {
  RationalFunction2 f, g;
};

struct PathIntegral {
  std::complex<double> value;
  double error = 0;
  long evaluations = 0;
  bool converged = true;
};

/// Integral over the Deninger path of h(x, y, dx/dt, dy/dt) dt, summing over
/// the branches with |y| >= 1. Each piece between consecutive special
/// parameters is integrated by tanh-sinh (inverse square-root behaviour at
/// collisions is its ideal case).
template <class Real, class H>
PathIntegral integrate_over_path(const DeningerPath& path, H&& h, double tol = 1e-12) {
  const LaurentPoly q = curve_on_contour(path.curve, path.base).clear_denominators().first;
  const BiPoly bp = to_bipoly(q);
  const LaurentPoly orig = path.curve.clear_denominators().first;
  const LaurentPoly px = orig.derivative("x"), py = orig.derivative("y");
  const Real two_pi = 2 * std::numbers::pi_v<Real>;
  auto integrand = [&](Real t) -> Complex<Real> {
    const Complex<Real> X = std::polar(Real(1), two_pi * t);
    const Complex<Real> x = path.base.template point<Real>(t);
    const Complex<Real> dx = path.base.template velocity<Real>(t);
    Complex<Real> sum(0);
    for (const auto& y : roots_in_y<Real>(bp, X).roots) {
      if (std::abs(y) < 1) continue;
      const Complex<Real> dy = -px.eval<Real>({x, y}) / py.eval<Real>({x, y}) * dx;
      const Complex<Real> v = h(x, y, dx, dy);
      if (std::isfinite(v.real()) && std::isfinite(v.imag())) sum += v;
    }
    return sum;
  };
  std::vector<Real> pts{Real(0)};
  for (double t : path.base.breakpoints) pts.push_back(static_cast<Real>(t));
  pts.push_back(Real(1));
  PathIntegral out;
  TanhSinhOptions topt;
  topt.tolerance = tol;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    auto r = tanh_sinh<Real>([&](Real t, Real, Real) { return integrand(t); }, pts[i], pts[i + 1], topt);
    out.value += std::complex<double>(static_cast<double>(r.value.real()), static_cast<double>(r.value.imag()));
    out.error += r.error;
    out.evaluations += r.evaluations;
    out.converged = out.converged && r.converged;
  }
  return out;
}

/// (1/2pi) * integral of eta(f,g) = log|f| d arg g - log|g| d arg f along
/// the path, with d arg taken as Im d log along the curve.
inline PathIntegral eta_integral(const SymbolPair& sym, const DeningerPath& path, double tol = 1e-12) {
  using Real = long double;
  auto h = [&](Complex<Real> x, Complex<Real> y, Complex<Real> dx, Complex<Real> dy) -> Complex<Real> {
    const auto fv = sym.f.value<Real>(x, y), gv = sym.g.value<Real>(x, y);
    if (fv == Complex<Real>(0) || gv == Complex<Real>(0) || !std::isfinite(std::abs(fv)) || !std::isfinite(std::abs(gv)))
      throw DomainError("symbol has a zero or pole on the path");
    const auto [fx, fy] = sym.f.dlog<Real>(x, y);
    const auto [gx, gy] = sym.g.dlog<Real>(x, y);
    const Real darg_f = std::imag(fx * dx + fy * dy), darg_g = std::imag(gx * dx + gy * dy);
    return Complex<Real>(std::log(std::abs(fv)) * darg_g - std::log(std::abs(gv)) * darg_f, 0);
  };
  PathIntegral r = integrate_over_path<Real>(path, h, tol);
  r.value /= 2 * std::numbers::pi;
  r.error /= 2 * std::numbers::pi;
  return r;
}

enum class LoopKind {
  /// f1^* omega1 = (x+1)^2 dx / (2y + x^4 + k x^3 + 2k x^2 + k x + 1) on Q_k, |x+1| = 1
  f1_pullback_omega1,
  /// f2^* omega2 = y (x^2-1) dx / (2 (y^2 - x^4)) on Q_k, |x+1| = 1
  f2_pullback_omega2,
  /// omega2 = y dx / (2 (y^2-1) x) on R_k, |x| = 1
  r_omega2,
  /// omega1 = y dx / ((x+1)(y^2 - x)) on P_k, |x| = 1
  p_omega1,
};

inline std::string loop_kind_name(LoopKind k) {
  switch (k) {
    case LoopKind::f1_pullback_omega1: return "f1_pullback_omega1";
    case LoopKind::f2_pullback_omega2: return "f2_pullback_omega2";
    case LoopKind::r_omega2: return "R_omega2";
    case LoopKind::p_omega1: return "P_omega1";
  }
  return "?";
}

inline PathIntegral loop_differential_integral(LoopKind kind, const Rational& k, double tol = 1e-13) {
  using Real = long double;
  using C = Complex<Real>;
  const Real kr = to_real<Real>(k);
  switch (kind) {
    case LoopKind::f1_pullback_omega1:
    case LoopKind::f2_pullback_omega2: {
      const auto path = deninger_path(family(Family::Q, k), CirclePath::make(-1, 1, 16));
      if (kind == LoopKind::f1_pullback_omega1)
        return integrate_over_path<Real>(
            path,
            [&](C x, C y, C dx, C) {
              const C a = (((x + kr) * x + 2 * kr) * x + kr) * x + Real(1);
              return (x + Real(1)) * (x + Real(1)) / (Real(2) * y + a) * dx;
            },
            tol);
      return integrate_over_path<Real>(
          path, [&](C x, C y, C dx, C) { return y * (x * x - Real(1)) / (Real(2) * (y * y - x * x * x * x)) * dx; },
          tol);
    }
    case LoopKind::r_omega2: {
      const auto path = deninger_path(family(Family::R, k), CirclePath::unit(16));
      return integrate_over_path<Real>(
          path, [&](C x, C y, C dx, C) { return y / (Real(2) * (y * y - Real(1)) * x) * dx; }, tol);
    }
    case LoopKind::p_omega1: {
      const auto path = deninger_path(family(Family::P, k), CirclePath::unit(16));
      return integrate_over_path<Real>(
          path, [&](C x, C y, C dx, C) { return y / ((x + Real(1)) * (y * y - x)) * dx; }, tol);
    }
  }
  throw DomainError("unknown loop kind");
}

struct RealAxisCrossing {
  double t = 0;
  double value = 0;
};

/// Parameters in (0,1) where Im z(t) changes sign, located by scanning and
/// bisection, with Re z there. Points within `exclude` of t = 0 are skipped.
template <class F>
std::vector<RealAxisCrossing> real_axis_crossings(F&& z, int scan = 4096, double exclude = 1e-3) {
  std::vector<RealAxisCrossing> out;
  auto im = [&](long double t) { return z(t).imag(); };
  long double t0 = exclude, v0 = im(t0);
  for (int i = 1; i <= scan; ++i) {
    const long double t1 = exclude + (1 - 2 * exclude) * static_cast<long double>(i) / scan;
    const long double v1 = im(t1);
    if (v0 == 0 || (v0 < 0) != (v1 < 0)) {
      long double lo = t0, hi = t1, flo = v0;
      if (v0 == 0) hi = lo;
      for (int it = 0; it < 200 && hi - lo > 1e-17L; ++it) {
        const long double mid = (lo + hi) / 2, fm = im(mid);
        if (fm == 0) {
          lo = hi = mid;
          break;
        }
        if ((fm < 0) == (flo < 0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      const long double t = (lo + hi) / 2;
      if (out.empty() || std::fabs(static_cast<double>(t) - out.back().t) > 1e-9)
        out.push_back({static_cast<double>(t), static_cast<double>(z(t).real())});
    }
    t0 = t1;
    v0 = v1;
  }
  return out;
}

/// x(t) = exp(2 pi i t) - 1 and the images u = (x + 1/x)/2, s = (u + k/4)^2 + k/2.
inline std::complex<long double> shifted_loop_x(long double t) {
  return std::polar(1.0L, 2 * std::numbers::pi_v<long double> * t) - 1.0L;
}
inline std::complex<long double> u_of_t(long double t) {
  const auto x = shifted_loop_x(t);
  return (x + 1.0L / x) / 2.0L;
}
inline std::complex<long double> s_of_t(long double t, long double k) {
  const auto tau = u_of_t(t) + k / 4;
  return tau * tau + k / 2;
}

}  // namespace rlab
