#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rlab/dilog.hpp"
#include "rlab/families.hpp"
#include "rlab/mahler.hpp"
#include "rlab/quadrature.hpp"

using namespace rlab;

TEST(BlochWigner, VanishesOnRealLine) {
  for (long double x : {-7.5L, -1.0L, -0.3L, 0.0L, 0.25L, 0.5L, 1.0L, 1.7L, 40.0L}) EXPECT_EQ(bloch_wigner(cld(x)), 0) << x;
}

TEST(BlochWigner, QuadratureOracleAtI) {
  // D(i) = log|i| arg(1-i) - Im int_0^i log(1-t) dt/t = int_0^1 atan(s)/s ds
  AdaptiveOptions opt;
  opt.tolerance = 1e-16;
  const auto q = integrate_adaptive<long double>([](long double s) { return s == 0 ? 1.0L : std::atan(s) / s; },
                                                 0.0L, 1.0L, opt);
  EXPECT_NEAR(static_cast<double>(bloch_wigner(cld(0, 1))), static_cast<double>(q.value), 1e-15);
}

TEST(BlochWigner, QuadratureOracleGeneric) {
  // along t = s z: Im int_0^1 log(1 - s z) ds/s, for |z| < 1 away from the cut
  for (cld z : {cld(0.3L, 0.4L), cld(-0.6L, 0.7L), cld(0.9L, -0.35L)}) {
    AdaptiveOptions opt;
    opt.tolerance = 1e-16;
    const auto q = integrate_adaptive<long double>(
        [&](long double s) { return s == 0 ? z.imag() * -1.0L : std::log(1.0L - s * z).imag() / s; }, 0.0L, 1.0L, opt);
    const long double direct = std::log(std::abs(z)) * std::arg(1.0L - z) - q.value;
    EXPECT_NEAR(static_cast<double>(bloch_wigner(z)), static_cast<double>(direct), 1e-14);
  }
}

TEST(BlochWigner, FunctionalEquationsOnRandomSamples) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<long double> d(-3, 3);
  int used = 0;
  while (used < 1000) {
    const cld x(d(rng), d(rng)), y(d(rng), d(rng));
    const cld xy = x * y;
    if (std::abs(1.0L - xy) < 1e-3L) continue;
    ++used;
    const long double five = bloch_wigner(x) + bloch_wigner(y) + bloch_wigner((1.0L - x) / (1.0L - xy)) +
                             bloch_wigner(1.0L - xy) + bloch_wigner((1.0L - y) / (1.0L - xy));
    EXPECT_NEAR(static_cast<double>(five), 0, 1e-12);
    EXPECT_NEAR(static_cast<double>(bloch_wigner(std::conj(x)) + bloch_wigner(x)), 0, 1e-12);
    EXPECT_NEAR(static_cast<double>(bloch_wigner(1.0L / x) + bloch_wigner(x)), 0, 1e-12);
    EXPECT_NEAR(static_cast<double>(bloch_wigner(1.0L - x) + bloch_wigner(x)), 0, 1e-12);
  }
}

TEST(BlochWigner, MaximumAtSixthRootOfUnity) {
  // D attains its maximum at exp(i pi/3); also continuity at 1
  const cld w = std::polar(1.0L, std::numbers::pi_v<long double> / 3);
  for (cld dz : {cld(0.01L, 0), cld(0, 0.01L), cld(-0.01L, 0), cld(0, -0.01L)}) EXPECT_GT(bloch_wigner(w), bloch_wigner(w + dz));
  EXPECT_NEAR(static_cast<double>(bloch_wigner(cld(1, 1e-12L))), 0, 1e-9);
}

TEST(EllipticDilog, OddPeriodicAndTwoTorsion) {
  for (int k : {-1, 20}) {
    const auto e = curve(CurveKind::Ek, k);
    const auto L = periods(e);
    std::mt19937 rng(5);
    std::uniform_real_distribution<long double> d(0, 1);
    for (int i = 0; i < 20; ++i) {
      const cld u = d(rng) * L.omega1 + d(rng) * L.omega2;
      const long double v = elliptic_dilog(u, L);
      EXPECT_NEAR(static_cast<double>(elliptic_dilog(-u, L) + v), 0, 1e-12);
      EXPECT_NEAR(static_cast<double>(elliptic_dilog(u + L.omega1, L) - v), 0, 1e-10);
      EXPECT_NEAR(static_cast<double>(elliptic_dilog(u + L.omega2, L) - v), 0, 1e-10);
    }
    EXPECT_EQ(elliptic_dilog(cld(0), L), 0);
    for (cld h : {L.omega1 / 2.0L, L.omega2 / 2.0L, (L.omega1 + L.omega2) / 2.0L})
      EXPECT_NEAR(static_cast<double>(elliptic_dilog(h, L)), 0, 1e-10);
    EXPECT_EQ(elliptic_dilog(e, CurvePoint::zero(), L), 0);
  }
}

TEST(EllipticDilog, TruncationWithinTailBound) {
  const auto e = curve(CurveKind::Ek, -50);
  const auto L = periods(e);
  const cld u = 0.3L * L.omega1 + 0.45L * L.omega2;
  const auto a = elliptic_dilog_detail(u, L, 1e-9L);
  const auto b = elliptic_dilog_detail(u, L, 1e-18L);
  EXPECT_GT(b.terms, a.terms);
  EXPECT_LE(std::fabs(a.value - b.value), a.tail);
}

TEST(EllipticDilog, ClassOfDiamondMatchesTorsionPoint) {
  for (int k : {-1, 20}) {
    const auto e = curve(CurveKind::Ek, k);
    const auto L = periods(e);
    const auto S = CurvePoint::rational(4 - k, 16 - 4 * k);
    const long double dS = elliptic_dilog(e, S, L);
    const auto c = diamond(named_function(NamedFunction::x0, k), named_function(NamedFunction::y0, k), e, L);
    EXPECT_NEAR(static_cast<double>(dilog_of_class(c, L)), static_cast<double>(-8 * dS), 1e-9);
    EXPECT_EQ(dilog_of_class(DivisorClass{}, L), 0);
  }
}

TEST(EllipticDilog, MahlerMeasureMultipliers) {
  // m(R_k) pi / (4 |D^E(S)|) and m(P_k) 2 pi / |D^U(-6(P) - 6(2P))| are integers
  const long double pi = std::numbers::pi_v<long double>;
  for (int k : {-2, 20}) {
    const auto e = curve(CurveKind::Ek, k);
    const auto L = periods(e);
    const long double dS = elliptic_dilog(e, CurvePoint::rational(4 - k, 16 - 4 * k), L);
    const long double r = mahler_2d(family(Family::R, k)).value * pi / (4 * std::fabs(dS));
    EXPECT_NEAR(static_cast<double>(r), std::round(static_cast<double>(r)), 1e-6);
    EXPECT_GE(std::round(r), 1);
  }
  const int k = 20;
  const auto U = curve(CurveKind::Uk, k);
  const auto LU = periods(U);
  const auto P = CurvePoint::rational(k, k);
  Divisor d;
  d.add(P, -6);
  d.add(mul(U, 2, P), -6);
  const long double v = dilog_of_class(class_of(d, U, LU), LU);
  EXPECT_GT(std::fabs(v), 1);
  const long double r = mahler_2d(family(Family::P, k)).value * 2 * pi / std::fabs(v);
  EXPECT_NEAR(static_cast<double>(r), std::round(static_cast<double>(r)), 1e-6);
}
