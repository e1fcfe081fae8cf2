#pragma once

// Panel-adaptive Gauss-Legendre and tanh-sinh quadrature. Integrands may be
// real or complex valued.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "rlab/errors.hpp"

namespace rlab {

template <class T>
struct QuadResult {
  T value{};
  double error = 0;
  long evaluations = 0;
  bool converged = true;
};

/// n-point Gauss-Legendre nodes and weights on [-1,1], by Newton iteration on
/// P_n from the Chebyshev-like initial guess.
template <class Real>
struct GaussLegendreRule {
  std::vector<Real> nodes, weights;

  explicit GaussLegendreRule(int n) : nodes(static_cast<std::size_t>(n)), weights(static_cast<std::size_t>(n)) {
    const Real pi = std::numbers::pi_v<Real>;
    for (int i = 0; i < (n + 1) / 2; ++i) {
      Real z = std::cos(pi * (Real(i) + Real(0.75)) / (Real(n) + Real(0.5)));
      Real dp = 0;
      for (int it = 0; it < 100; ++it) {
        Real p0 = 1, p1 = z;
        for (int j = 2; j <= n; ++j) {
          Real p2 = ((2 * j - 1) * z * p1 - (j - 1) * p0) / j;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (z * p1 - p0) / (z * z - 1);
        Real dz = p1 / dp;
        z -= dz;
        if (std::fabs(dz) < std::numeric_limits<Real>::epsilon()) break;
      }
      // recompute the derivative at the converged node
      Real p0 = 1, p1 = z;
      for (int j = 2; j <= n; ++j) {
        Real p2 = ((2 * j - 1) * z * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1);
      const Real w = 2 / ((1 - z * z) * dp * dp);
      nodes[static_cast<std::size_t>(i)] = -z;
      nodes[static_cast<std::size_t>(n - 1 - i)] = z;
      weights[static_cast<std::size_t>(i)] = weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
  }

  template <class F>
  auto apply(F&& f, Real a, Real b) const {
    const Real half = (b - a) / 2, mid = (a + b) / 2;
    decltype(f(a)) sum{};
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(mid + half * nodes[i]);
    return sum * half;
  }
};

template <class Real>
const GaussLegendreRule<Real>& gauss_legendre_16() {
  static const GaussLegendreRule<Real> rule(16);
  return rule;
}

struct AdaptiveOptions {
  double tolerance = 1e-11;
  int max_depth = 48;
  long max_evaluations = 4'000'000;
};

/// Globally adaptive bisection: the panel with the largest error estimate
/// (|16-point value - sum over its halves|) is split until the summed
/// estimate drops below the tolerance. The final sum runs over panels in
/// position order, so the result does not depend on heap tie-breaking.
template <class Real, class F>
auto integrate_adaptive(F&& f, Real a, Real b, AdaptiveOptions opt = {}) {
  using T = decltype(f(a));
  const auto& rule = gauss_legendre_16<Real>();
  QuadResult<T> out;
  struct Panel {
    Real a, b;
    T left, right;  // 16-point values on the two halves
    double error;
    int depth;
    T value() const { return left + right; }
  };
  auto make = [&](Real lo, Real hi, const T& coarse, int depth) {
    const Real m = (lo + hi) / 2;
    Panel p{lo, hi, rule.apply(f, lo, m), rule.apply(f, m, hi), 0, depth};
    p.error = static_cast<double>(std::abs(p.value() - coarse));
    out.evaluations += 32;
    return p;
  };
  auto by_error = [](const Panel& u, const Panel& v) {
    if (u.error != v.error) return u.error < v.error;
    return u.a > v.a;
  };
  const T whole = rule.apply(f, a, b);
  out.evaluations = 16;
  std::vector<Panel> heap{make(a, b, whole, 0)}, done;
  double total = heap.front().error;
  while (total > opt.tolerance && !heap.empty()) {
    if (out.evaluations > opt.max_evaluations) break;
    std::pop_heap(heap.begin(), heap.end(), by_error);
    Panel p = heap.back();
    heap.pop_back();
    if (p.depth >= opt.max_depth) {
      // cannot refine further; its error stays in the total
      done.push_back(p);
      total -= p.error;
      continue;
    }
    const Real m = (p.a + p.b) / 2;
    Panel l = make(p.a, m, p.left, p.depth + 1), r = make(m, p.b, p.right, p.depth + 1);
    total += l.error + r.error - p.error;
    heap.push_back(l);
    std::push_heap(heap.begin(), heap.end(), by_error);
    heap.push_back(r);
    std::push_heap(heap.begin(), heap.end(), by_error);
  }
  done.insert(done.end(), heap.begin(), heap.end());
  std::sort(done.begin(), done.end(), [](const Panel& u, const Panel& v) { return u.a < v.a; });
  out.value = T{};
  out.error = 0;
  for (const auto& p : done) {
    out.value += p.value();
    out.error += p.error;
  }
  if (out.error > opt.tolerance) out.converged = false;
  return out;
}

/// Adaptive integration over consecutive segments [pts[i], pts[i+1]].
template <class Real, class F>
auto integrate_segments(F&& f, const std::vector<Real>& pts, AdaptiveOptions opt = {}) {
  using T = decltype(f(pts.front()));
  QuadResult<T> total;
  if (pts.size() < 2) return total;
  const Real length = pts.back() - pts.front();
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (!(pts[i + 1] > pts[i])) continue;
    AdaptiveOptions o = opt;
    o.tolerance = opt.tolerance * static_cast<double>((pts[i + 1] - pts[i]) / length);
    auto r = integrate_adaptive<Real>(f, pts[i], pts[i + 1], o);
    total.value += r.value;
    total.error += r.error;
    total.evaluations += r.evaluations;
    total.converged = total.converged && r.converged;
  }
  return total;
}

struct TanhSinhOptions {
  double tolerance = 1e-12;
  int max_level = 12;
};

/// Tanh-sinh quadrature on [a,b]. The integrand receives (x, x-a, b-x), the
/// endpoint distances computed without cancellation, so inverse square-root
/// endpoint singularities are integrated to full precision.
template <class Real, class F>
auto tanh_sinh(F&& f, Real a, Real b, TanhSinhOptions opt = {}) {
  using T = decltype(f(a, a, a));
  const Real pi_2 = std::numbers::pi_v<Real> / 2;
  const Real c = (a + b) / 2, hw = (b - a) / 2;
  // weights beyond t_max are negligible at working precision
  const Real t_max = std::asinh(-std::log(std::numeric_limits<Real>::epsilon()) * 2 / pi_2);
  QuadResult<T> out;
  auto term = [&](Real t) -> T {
    const Real s = pi_2 * std::sinh(t);
    const Real ch = std::cosh(s);
    const Real w = pi_2 * std::cosh(t) / (ch * ch);
    // 1 - tanh(s) = 2 / (exp(2s) + 1), exact for large s
    const Real d_right = hw * 2 / (std::exp(2 * s) + 1);
    const Real d_left = hw * 2 / (std::exp(-2 * s) + 1);
    const Real x = c + hw * std::tanh(s);
    if (!(d_left > 0) || !(d_right > 0) || w == 0) return T{};
    ++out.evaluations;
    return w * f(x, d_left, d_right);
  };
  Real h = 1;
  T sum = term(0);
  for (Real t = h; t <= t_max; t += h) sum += term(t) + term(-t);
  T prev = sum * h * hw;
  for (int level = 1; level <= opt.max_level; ++level) {
    h /= 2;
    for (Real t = h; t <= t_max; t += 2 * h) sum += term(t) + term(-t);
    const T cur = sum * h * hw;
    const double diff = static_cast<double>(std::abs(cur - prev));
    prev = cur;
    out.value = cur;
    out.error = diff;
    if (level >= 3 && diff <= opt.tolerance * std::max(1.0, static_cast<double>(std::abs(cur)))) {
      out.converged = true;
      return out;
    }
  }
  out.converged = false;
  return out;
}

}  // namespace rlab
