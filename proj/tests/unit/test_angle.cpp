#include <gtest/gtest.h>

#include <random>

#include "mkin/angle.hpp"
#include "mkin/error.hpp"
#include "oracles.hpp"

using namespace mkin;

namespace {

AngleMeasure arclen_on(const PlaneContext& ctx) {
  return AngleMeasure::arc_length(StarlikeCurve(curves::unit_circle(ctx), {0, 0}), ctx);
}

}  // namespace

TEST(Angle, SquareQuarterTurnIsEuclidean) {
  const auto sq = PlaneContext::lp(INFINITY);
  const GeneralRotation r(arclen_on(sq), kPi / 2);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 200; ++i) {
    const Vec2 q{u(rng), u(rng)};
    EXPECT_NEAR(norm_e(r.apply(q) - perp(q)), 0.0, 1e-9);
  }
}

TEST(Angle, EuclideanMeasuresAgree) {
  const auto e = PlaneContext::euclidean();
  const StarlikeCurve carrier(curves::unit_circle(e), {0, 0});
  const auto a = AngleMeasure::arc_length(carrier, e);
  const auto b = AngleMeasure::sector_area(carrier);
  for (double t = 0.1; t < kTwoPi; t += 0.4) {
    EXPECT_NEAR(a.cdf(t), t, 1e-9);
    EXPECT_NEAR(b.cdf(t), t, 1e-9);
    EXPECT_NEAR(rotate(GeneralRotation(a, t), {2, 0}).y, 2 * std::sin(t), 1e-9);
  }
  EXPECT_NEAR(a.total_raw(), kTwoPi, 1e-9);
  EXPECT_NEAR(b.total_raw(), kPi, 1e-9);
}

TEST(Angle, GroupLawsOnL4) {
  const auto m = arclen_on(PlaneContext::lp(4));
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> ang(0, kTwoPi), c(-2, 2);
  for (int i = 0; i < 50; ++i) {
    const GeneralRotation a(m, ang(rng)), b(m, ang(rng));
    const Vec2 q{c(rng), c(rng)};
    EXPECT_NEAR(norm_e(compose(a, b).apply(q) - a.apply(b.apply(q))), 0.0, 1e-8);
    EXPECT_NEAR(norm_e(inverse(a).apply(a.apply(q)) - q), 0.0, 1e-8);
    EXPECT_NEAR(norm_e(a.apply(3.0 * q) - 3.0 * a.apply(q)), 0.0, 1e-8);
  }
}

TEST(Angle, RotationPreservesNorm) {
  const auto l4 = PlaneContext::lp(4);
  const GeneralRotation r(arclen_on(l4), 1.234);
  for (double a = 0; a < kTwoPi; a += 0.3) {
    const Vec2 q = 1.7 * from_angle(a);
    EXPECT_NEAR(l4.norm(r.apply(q)), l4.norm(q), 1e-10);
  }
}

TEST(Angle, AreaMeasureOnL4MatchesSectorOracle) {
  // Sector area from the origin to the boundary point at Euclidean angle psi,
  // by Simpson on r(a)^2 / 2 with the closed-form l4 radius.
  const auto l4 = PlaneContext::lp(4);
  const StarlikeCurve carrier(curves::unit_circle(l4), {0, 0});
  const auto m = AngleMeasure::sector_area(carrier);
  auto r2 = [](double a) {
    return 0.5 / std::sqrt(std::pow(std::cos(a), 4) + std::pow(std::sin(a), 4));
  };
  const double total = oracle::simpson(r2, 0, kTwoPi, 4000);
  EXPECT_NEAR(m.total_raw(), total, 1e-8);
  for (double psi : {0.3, 1.0, 2.5, 4.0}) {
    const double want = kTwoPi * oracle::simpson(r2, 0, psi, 4000) / total;
    EXPECT_NEAR(m.direction_angle(from_angle(psi)), want, 1e-7) << psi;
  }
}

TEST(Angle, PolarRoundTrip) {
  const auto l4 = PlaneContext::lp(4);
  const auto m = arclen_on(l4);
  const Vec2 q0{1, 0.3};
  for (double a = 0.2; a < kTwoPi; a += 0.9) {
    const Vec2 q = 0.8 * from_angle(a);
    const Polar pl = to_polar(m, l4, q0, q);
    EXPECT_NEAR(pl.radius, l4.norm(q), 1e-10);
    EXPECT_NEAR(norm_e(from_polar(m, l4, q0, pl) - q), 0.0, 1e-9);
  }
}

TEST(Angle, BrassConditions) {
  const auto b = brass_check(arclen_on(PlaneContext::lp(4)));
  EXPECT_TRUE(b.total_ok);
  EXPECT_TRUE(b.symmetric);
  EXPECT_TRUE(b.atomless);
}

TEST(Angle, ParseRotationAngle) {
  EXPECT_NEAR(parse_rotation_angle("deg=90"), kPi / 2, 1e-15);
  EXPECT_NEAR(parse_rotation_angle("theta=0.25"), 0.25, 0.0);
  try {
    parse_rotation_angle("grad=3");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BadParams);
  }
}

TEST(Angle, ComposeRejectsDifferentMeasures) {
  const auto a = arclen_on(PlaneContext::lp(4));
  const auto b = arclen_on(PlaneContext::lp(3));
  try {
    compose(GeneralRotation(a, 1), GeneralRotation(b, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MeasureMismatch);
  }
}
