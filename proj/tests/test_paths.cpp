#include <gtest/gtest.h>

#include <cmath>

#include "rlab/families.hpp"
#include "rlab/mahler.hpp"
#include "rlab/parse.hpp"
#include "rlab/paths.hpp"

using namespace rlab;

namespace {

SymbolPair sym(const char* f, const char* g) { return {RationalFunction2(parse_poly(f)), RationalFunction2(parse_poly(g))}; }

}  // namespace

TEST(DeningerPath, ClosedExamples) {
  EXPECT_TRUE(deninger_path(family(Family::R, -1), CirclePath::unit()).closed);
  EXPECT_TRUE(deninger_path(family(Family::Qshift, -2), CirclePath::unit()).closed);
  auto line = deninger_path(parse_poly("y - 2*x"), CirclePath::unit());
  EXPECT_TRUE(line.closed);
  for (const auto& b : line.branch) {
    ASSERT_EQ(b.size(), 1u);
    EXPECT_NEAR(std::abs(b[0]), 2.0, 1e-14);
  }
}

TEST(DeningerPath, OpenPath) {
  // y = x + 1/2 leaves |y| >= 1 at two points of |x| = 1 without a partner
  auto path = deninger_path(parse_poly("2*y - 2*x - 1"), CirclePath::unit());
  EXPECT_FALSE(path.closed);
  EXPECT_EQ(path.boundary.size(), 2u);
}

TEST(DeningerPath, ShiftedContourMatchesShiftedPolynomial) {
  for (int k : {-3, 20}) {
    auto a = deninger_path(family(Family::Q, k), CirclePath::make(-1, 1));
    auto b = deninger_path(family(Family::Qshift, k), CirclePath::unit());
    EXPECT_TRUE(a.closed);
    EXPECT_TRUE(b.closed);
    ASSERT_EQ(a.torus_intersections.size(), 1u);
    EXPECT_TRUE(a.torus_intersections[0].exact);
    EXPECT_EQ(a.torus_intersections[0].exact_x, 0);  // x = X - 1 with X = 1
    EXPECT_EQ(a.torus_intersections[0].exact_y, -1);
  }
}

TEST(DeningerPath, BranchCollisionReported) {
  // y^2 = x has a collision at x = 0, off the unit circle; y^2 = x - 1 collides at t = 0
  EXPECT_TRUE(deninger_path(parse_poly("y^2 - x"), CirclePath::unit()).collisions.empty());
  auto p = deninger_path(parse_poly("y^2 - x + 1"), CirclePath::unit());
  ASSERT_EQ(p.collisions.size(), 1u);
  EXPECT_NEAR(p.collisions[0], 0.0, 1e-12);
}

TEST(Eta, VanishesOnDiagonal) {
  auto path = deninger_path(family(Family::R, -1), CirclePath::unit());
  EXPECT_NEAR(std::abs(eta_integral(sym("x", "x"), path).value), 0, 1e-14);
}

TEST(Eta, MatchesMahlerOnReciprocal) {
  for (int k : {-1, -5, 20}) {
    auto r = family(Family::R, k);
    auto path = deninger_path(r, CirclePath::unit());
    const double eta = eta_integral(sym("x", "y"), path).value.real();
    const auto cleared = r.clear_denominators().first;
    const double m_lead = mahler_1d(cleared.coefficients_in("y").back()).value;
    EXPECT_NEAR(eta, -(mahler_2d(r).value - m_lead), 1e-9) << k;
  }
}

TEST(Eta, Antisymmetric) {
  auto path = deninger_path(family(Family::Qshift, -3), CirclePath::unit());
  const auto a = eta_integral(sym("x+1", "y"), path).value.real();
  const auto b = eta_integral(sym("y", "x+1"), path).value.real();
  EXPECT_NEAR(a, -b, 1e-12);
  EXPECT_GT(std::fabs(a), 1e-3);
}

TEST(Eta, ZeroOnPathRejected) {
  auto path = deninger_path(parse_poly("y - 2*x"), CirclePath::unit());
  EXPECT_THROW(eta_integral(sym("y - 2*x", "x"), path), DomainError);
}

TEST(Loops, F1VanishesForNegativeK) {
  EXPECT_LT(std::abs(loop_differential_integral(LoopKind::f1_pullback_omega1, -5).value), 1e-8);
  EXPECT_LT(std::abs(loop_differential_integral(LoopKind::f1_pullback_omega1, -2).value), 1e-8);
}

TEST(Loops, Omega2Ratios) {
  auto ratio = [](int k) {
    return std::abs(loop_differential_integral(LoopKind::f2_pullback_omega2, k).value) /
           std::abs(loop_differential_integral(LoopKind::r_omega2, k).value);
  };
  EXPECT_NEAR(ratio(-5), 2.0, 1e-6);
  EXPECT_NEAR(ratio(20), 1.0, 1e-6);
}

TEST(Loops, Omega1MatchesPForLargeK) {
  const double a = std::abs(loop_differential_integral(LoopKind::f1_pullback_omega1, 20).value);
  const double b = std::abs(loop_differential_integral(LoopKind::p_omega1, 20).value);
  EXPECT_NEAR(a / b, 1.0, 1e-6);
}

TEST(Loops, RealLineCrossCheck) {
  // the R loop equals a real integral with inverse square-root endpoints:
  // |integral| = int_0^1 du / sqrt(u (1-u) (4u+k-4) (4u+k-8))
  for (int k : {-5, 20}) {
    const long double kk = k;
    auto real = tanh_sinh<long double>(
        [&](long double u, long double dl, long double dr) {
          return 1.0L / std::sqrt(std::fabs(dl * dr * (4 * u + kk - 4) * (4 * u + kk - 8)));
        },
        0.0L, 1.0L);
    const double loop = std::abs(loop_differential_integral(LoopKind::r_omega2, k).value);
    EXPECT_NEAR(static_cast<double>(real.value), loop, 1e-10) << k;
  }
}

TEST(Crossings, UOfT) {
  auto c = real_axis_crossings([](long double t) { return u_of_t(t); });
  ASSERT_EQ(c.size(), 3u);
  EXPECT_NEAR(c[0].t, 1.0 / 6, 1e-12);
  EXPECT_NEAR(c[0].value, -0.5, 1e-12);
  EXPECT_NEAR(c[1].t, 0.5, 1e-12);
  EXPECT_NEAR(c[1].value, -1.25, 1e-12);
  EXPECT_NEAR(c[2].t, 5.0 / 6, 1e-12);
  EXPECT_NEAR(c[2].value, -0.5, 1e-12);
}

TEST(Crossings, SOfT) {
  for (int k : {-5, 20}) {
    auto c = real_axis_crossings([k](long double t) { return s_of_t(t, k); });
    ASSERT_EQ(c.size(), 3u) << k;
    EXPECT_NEAR(c[0].value, (k + 2.0) * (k + 2.0) / 16, 1e-10);
    EXPECT_NEAR(c[1].value, (k * k - 2.0 * k + 25) / 16, 1e-10);
    EXPECT_NEAR(c[2].value, (k + 2.0) * (k + 2.0) / 16, 1e-10);
  }
}
