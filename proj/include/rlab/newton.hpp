#pragma once

// Newton polygons of two-variable Laurent polynomials, face polynomials,
// temperedness and reciprocality.

#include <algorithm>
#include <array>
#include <numeric>
#include <vector>

#include "rlab/errors.hpp"
#include "rlab/laurent_poly.hpp"
#include "rlab/upoly.hpp"

namespace rlab {

using LatticePoint = std::array<long, 2>;

struct NewtonFace {
  std::pair<LatticePoint, LatticePoint> edge;
  /// Restriction to the lattice points of the edge, in the variable t:
  /// coefficient of t^j is the coefficient at edge.first + j*(primitive step).
  LaurentPoly face_poly;

  QPoly as_qpoly() const { return face_poly.as_univariate(); }
};

/// Vertices of the convex hull, counterclockwise, starting from the
/// lexicographically smallest point (Andrew's monotone chain).
inline std::vector<LatticePoint> convex_hull(std::vector<LatticePoint> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  auto cross = [](const LatticePoint& o, const LatticePoint& a, const LatticePoint& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  std::vector<LatticePoint> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

inline std::vector<NewtonFace> newton_faces(const LaurentPoly& p) {
  if (p.is_zero()) throw DomainError("Newton polygon of the zero polynomial");
  if (p.nvars() != 2) throw DomainError("Newton faces need exactly two variables");
  std::vector<LatticePoint> pts;
  for (const auto& [e, c] : p.terms()) pts.push_back({e[0], e[1]});
  const auto hull = convex_hull(pts);
  std::vector<NewtonFace> faces;
  if (hull.size() < 2) return faces;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    // a segment (two hull points) yields both of its sides
    const LatticePoint a = hull[i], b = hull[(i + 1) % hull.size()];
    const long dx = b[0] - a[0], dy = b[1] - a[1];
    const long g = std::gcd(std::labs(dx), std::labs(dy));
    LaurentPoly face({"t"});
    for (long j = 0; j <= g; ++j) {
      const Rational c = p.coeff({static_cast<int>(a[0] + j * dx / g), static_cast<int>(a[1] + j * dy / g)});
      if (c != 0) face += LaurentPoly::monomial(c, {static_cast<int>(j)}, {"t"});
    }
    faces.push_back({{a, b}, face});
  }
  return faces;
}

/// True iff every root of the (nonzero) polynomial f, other than 0, is a
/// root of unity. Decided by dividing out cyclotomic factors Phi_n with
/// phi(n) <= deg; every n with phi(n) <= d satisfies n <= 2 d^2.
inline bool roots_are_roots_of_unity(QPoly f) {
  if (f.is_zero()) throw DomainError("zero polynomial");
  f.strip_t_power();
  QPoly g = squarefree_part(f);
  const long d = g.degree();
  for (long n = 1; n <= 2 * d * d + 2 && g.degree() > 0; ++n) {
    if (euler_phi(n) > g.degree()) continue;
    const QPoly phi = cyclotomic(static_cast<int>(n));
    if (divides(phi, g)) g = g / phi;
  }
  return g.degree() <= 0;
}

inline bool is_tempered(const LaurentPoly& p) {
  for (const auto& face : newton_faces(p))
    if (!roots_are_roots_of_unity(face.as_qpoly())) return false;
  return true;
}

/// p(1/x,1/y) * monomial = +-p(x,y)
inline bool is_reciprocal(const LaurentPoly& p) {
  if (p.is_zero()) throw DomainError("reciprocality of the zero polynomial");
  const auto a = p.clear_denominators().first;
  const auto b = p.reflected().clear_denominators().first;
  return a == b || a == -b;
}

}  // namespace rlab
