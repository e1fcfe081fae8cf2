#include <gtest/gtest.h>

#include <random>

#include "rlab/families.hpp"
#include "rlab/newton.hpp"
#include "rlab/parse.hpp"

using namespace rlab;

namespace {

LaurentPoly xy(const std::string& s, const Bindings& b = {}) { return parse_poly(s, b); }

}  // namespace

TEST(Parse, Monomial) {
  auto p = xy("x^4");
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p.coeff({4, 0}), 1);
}

TEST(Parse, ExpandsWithBoundParameter) {
  auto p = xy("(x+1)*(y+1)*(x+y) - k*x*y", {{"k", 2}});
  EXPECT_EQ(p.eval_exact({1, 1}), 6);
  // (x+1)(y+1)(x+y) has 8 monomials before cancellation; -2xy hits x*y
  EXPECT_EQ(p.coeff({1, 1}), 0);
  EXPECT_EQ(p.coeff({2, 1}), 1);
}

TEST(Parse, QAtZero) {
  auto q = xy("y^2+(x^4+k*x^3+2*k*x^2+k*x+1)*y+x^4", {{"k", 0}});
  EXPECT_EQ(q, xy("y^2 + x^4*y + y + x^4"));
}

TEST(Parse, RationalsAndNegativeExponents) {
  auto p = xy("3/2*x^-2*y - 1/3");
  EXPECT_EQ(p.coeff({-2, 1}), Rational(3, 2));
  EXPECT_EQ(p.coeff({0, 0}), Rational(-1, 3));
  EXPECT_EQ(xy("2^-1"), LaurentPoly::constant(Rational(1, 2)));
  EXPECT_EQ(xy("x1*y2"), xy("x*y"));
}

TEST(Parse, Errors) {
  try {
    xy("x + * y");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
  EXPECT_THROW(xy("x + k"), ParseError);
  EXPECT_THROW(xy("x^99999999999"), ParseError);
  EXPECT_THROW(xy("(x+1)^-1"), ParseError);
  EXPECT_THROW(xy("(x+1"), ParseError);
  EXPECT_THROW(xy("1/0"), ParseError);
  EXPECT_THROW(xy(""), ParseError);
}

TEST(Parse, RoundTrip) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> ex(-3, 4), co(-9, 9), nt(1, 6);
  for (int trial = 0; trial < 200; ++trial) {
    LaurentPoly p;
    int n = nt(rng);
    for (int i = 0; i < n; ++i) p += LaurentPoly::monomial(Rational(co(rng), 1 + std::abs(co(rng))), {ex(rng), ex(rng)});
    EXPECT_EQ(parse_poly(to_string(p)), p) << to_string(p);
  }
  for (Family f : {Family::P, Family::Q, Family::R, Family::Qshift}) {
    auto p = family(f, Rational(-7, 3));
    EXPECT_EQ(parse_poly(to_string(p)), p);
  }
}

TEST(Families, RAtFour) { EXPECT_EQ(family(Family::R, 4), xy("x + x^-1 + y + y^-1")); }

TEST(Families, QshiftVanishesAtOneMinusOne) {
  for (int k : {-50, -12, -1, 0, 3, 17, 20, 100}) EXPECT_EQ(family(Family::Qshift, k).eval_exact({1, -1}), 0) << k;
  EXPECT_EQ(family(Family::Qshift, Rational(5, 7)).eval_exact({1, -1}), 0);
}

TEST(Families, PAtZero) { EXPECT_EQ(family(Family::P, 0), xy("x^2*y + x^2 + x*y^2 + 2*x*y + x + y^2 + y")); }

TEST(Families, ByNameAndUnknown) {
  EXPECT_EQ(family("Qshift", 3), family(Family::Qshift, 3));
  EXPECT_THROW(family("Z", 3), DomainError);
}

TEST(Shift, Examples) {
  EXPECT_EQ(xy("x^2").substitute_shift("x", -1), xy("x^2 - 2*x + 1"));
  auto q = family(Family::Q, 5);
  auto shifted = q.substitute_shift("x", -1);
  // x=1 in the shifted polynomial is x=0 in Q: y^2 + y
  LaurentPoly at_one({"x", "y"});
  for (const auto& [e, c] : shifted.terms()) at_one += LaurentPoly::monomial(c, {0, e[1]});
  EXPECT_EQ(at_one, xy("y^2 + y"));
  EXPECT_EQ(shifted.substitute_shift("x", 1), q);
  EXPECT_THROW(xy("x^-1 + 1").substitute_shift("x", 1), DomainError);
}

TEST(Newton, TriangleFaces) {
  auto faces = newton_faces(xy("x + y + 1"));
  ASSERT_EQ(faces.size(), 3u);
  for (const auto& f : faces) EXPECT_EQ(f.face_poly.size(), 2u);
}

TEST(Newton, NonTemperedFace) {
  // hull of {(0,0),(1,0),(0,1)}: the bottom edge carries 2 + t, root -2
  auto faces = newton_faces(xy("x + y + 2"));
  ASSERT_EQ(faces.size(), 3u);
  EXPECT_EQ(faces[0].edge.first, (LatticePoint{0, 0}));
  EXPECT_EQ(faces[0].edge.second, (LatticePoint{1, 0}));
  EXPECT_EQ(faces[0].as_qpoly(), QPoly({Rational(2), Rational(1)}));
  EXPECT_FALSE(is_tempered(xy("x + y + 2")));
  EXPECT_TRUE(is_tempered(xy("x + y + 1")));
}

TEST(Newton, HullIsCounterclockwise) {
  auto faces = newton_faces(family(Family::Qshift, 3));
  long area2 = 0;
  for (const auto& f : faces)
    area2 += f.edge.first[0] * f.edge.second[1] - f.edge.second[0] * f.edge.first[1];
  EXPECT_GT(area2, 0);
}

TEST(Newton, FamiliesTempered) {
  for (int k : {-1, 3, 17}) EXPECT_TRUE(is_tempered(family(Family::Q, k))) << k;
  for (int k : {-50, -12, -5, -2, -1, 17, 18, 20, 100}) {
    EXPECT_TRUE(is_tempered(family(Family::Q, k))) << k;
    EXPECT_TRUE(is_tempered(family(Family::Qshift, k))) << k;
  }
}

TEST(Newton, MonomialMultipleInvariance) {
  auto p = family(Family::Qshift, -3);
  auto m = p.shifted({3, -2});
  EXPECT_EQ(is_tempered(p), is_tempered(m));
  auto fp = newton_faces(p), fm = newton_faces(m);
  ASSERT_EQ(fp.size(), fm.size());
  for (std::size_t i = 0; i < fp.size(); ++i) EXPECT_EQ(fp[i].as_qpoly(), fm[i].as_qpoly());
}

TEST(Newton, Reciprocal) {
  for (int k : {-5, -1, 17, 20}) {
    EXPECT_TRUE(is_reciprocal(family(Family::P, k)));
    EXPECT_TRUE(is_reciprocal(family(Family::R, k)));
  }
  // direct monomial identity check at k=2: compare p with every shifted reflection
  auto q = family(Family::Qshift, 2);
  auto r = q.reflected();
  bool any = false;
  for (int a = -8; a <= 8; ++a)
    for (int b = -8; b <= 8; ++b) {
      auto s = r.shifted({a, b});
      any = any || s == q || s == -q;
    }
  EXPECT_FALSE(any);
  EXPECT_FALSE(is_reciprocal(q));
}

TEST(Newton, RootsOfUnityTest) {
  EXPECT_TRUE(roots_are_roots_of_unity(cyclotomic(12) * cyclotomic(5) * cyclotomic(5)));
  EXPECT_FALSE(roots_are_roots_of_unity(QPoly({Rational(1), Rational(-1), Rational(-1)})));
  EXPECT_TRUE(roots_are_roots_of_unity(QPoly({Rational(0), Rational(0), Rational(3)})));
}
