#pragma once

#include <string>
#include <string_view>

#include "rlab/errors.hpp"
#include "rlab/laurent_poly.hpp"
#include "rlab/parse.hpp"

namespace rlab {

enum class Family { P, Q, R, Qshift };

inline Family family_from_name(std::string_view name) {
  if (name == "P") return Family::P;
  if (name == "Q") return Family::Q;
  if (name == "R") return Family::R;
  if (name == "Qshift") return Family::Qshift;
  throw DomainError("unknown family '" + std::string(name) + "'");
}

inline std::string family_name(Family f) {
  switch (f) {
    case Family::P: return "P";
    case Family::Q: return "Q";
    case Family::R: return "R";
    case Family::Qshift: return "Qshift";
  }
  return "?";
}

/// P_k = (x+1)(y+1)(x+y) - kxy, Q_k = y^2 + (x^4+kx^3+2kx^2+kx+1)y + x^4,
/// R_k = x + 1/x + y + 1/y + k - 4 (Laurent), Qshift_k = Q_k(x-1, y).
inline LaurentPoly family(Family f, const Rational& k) {
  const Bindings b{{"k", k}};
  switch (f) {
    case Family::P: return parse_poly("(x+1)*(y+1)*(x+y) - k*x*y", b);
    case Family::Q: return parse_poly("y^2 + (x^4 + k*x^3 + 2*k*x^2 + k*x + 1)*y + x^4", b);
    case Family::R: return parse_poly("x + x^-1 + y + y^-1 + k - 4", b);
    case Family::Qshift: return family(Family::Q, k).substitute_shift("x", Rational(-1));
  }
  throw DomainError("unknown family");
}

inline LaurentPoly family(std::string_view name, const Rational& k) { return family(family_from_name(name), k); }

}  // namespace rlab
