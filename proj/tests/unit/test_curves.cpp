#include <gtest/gtest.h>

#include "mkin/curvature.hpp"
#include "mkin/curves.hpp"
#include "mkin/error.hpp"
#include "oracles.hpp"

using namespace mkin;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::IoError;
}

// Euclidean speed of the nephroid, from a central difference of its
// coordinate formula (not from the library).
double nephroid_speed(double t) {
  auto x = [](double u) {
    return std::pair{0.5 * (-3 * std::cos(u) + std::cos(3 * u)),
                     0.5 * (-3 * std::sin(u) + std::sin(3 * u))};
  };
  const double h = 1e-5;
  const auto a = x(t + h), b = x(t - h);
  return std::hypot(a.first - b.first, a.second - b.second) / (2 * h);
}

}  // namespace

TEST(Curves, NephroidQuarterLength) {
  const auto e = PlaneContext::euclidean();
  const double ref = oracle::simpson(nephroid_speed, 0.0, oracle::pi / 2, 2000);
  EXPECT_NEAR(ref, 3.0, 1e-8);
  EXPECT_NEAR(arc_length(curves::nephroid(), e, 0.0, oracle::pi / 2), 3.0, 1e-6);
}

TEST(Curves, NephroidSubintervalsFollowCosineForm) {
  const auto e = PlaneContext::euclidean();
  const double iv[3][2] = {{0.2, 0.9}, {0.4, 1.3}, {0.75, 1.5}};
  for (const auto& [a, b] : iv) {
    const double ref = oracle::simpson(nephroid_speed, a, b, 2000);
    EXPECT_NEAR(ref, 3.0 * (std::cos(a) - std::cos(b)), 1e-8);
    EXPECT_NEAR(arc_length(curves::nephroid(), e, a, b), ref, 1e-6);
    // The sine form 3(sin b - sin a) is a different number here.
    EXPECT_GT(std::abs(3.0 * (std::sin(b) - std::sin(a)) - ref), 1e-2);
  }
}

TEST(Curves, PolygonalLengthConvergesToQuadrature) {
  const auto l4 = PlaneContext::lp(4);
  const Curve c = curves::heliocentric_ellipse(1.0, 0.4);
  const double q = arc_length(c, l4, c.t0(), c.t1());
  const double p1 = polygonal_length(c, l4, c.t0(), c.t1(), 1000);
  const double p2 = polygonal_length(c, l4, c.t0(), c.t1(), 2000);
  EXPECT_LT(p1, p2);
  EXPECT_LT(p2, q + 1e-12);
  EXPECT_NEAR((q - p1) / (q - p2), 4.0, 0.1);
}

TEST(Curves, UnitCircleLengthIsCircumference) {
  for (const char* spec : {"euclidean", "lp:4", "lp:1.5"}) {
    const auto ctx = PlaneContext::from_spec(spec);
    const Curve c = curves::unit_circle(ctx);
    EXPECT_TRUE(c.is_arclength(ctx));
    EXPECT_NEAR(c.span(), ctx.circumference(), 1e-12) << spec;
    EXPECT_NEAR(arc_length(c, ctx, c.t0(), c.t1()), ctx.circumference(), 1e-6) << spec;
  }
}

TEST(Curves, ReparameterizationHasUnitSpeed) {
  const auto l4 = PlaneContext::lp(4);
  const Curve c = reparam_by_arclength(curves::heliocentric_ellipse(1.0, 0.3), l4);
  EXPECT_TRUE(c.is_arclength(l4));
  for (double s = 0.05; s < c.t1(); s += c.span() / 37) {
    EXPECT_NEAR(l4.norm(c.derivative(s)), 1.0, 1e-6) << s;
    EXPECT_NEAR(l4.norm(tangent_direction(c, l4, s)), 1.0, 1e-6);
  }
}

TEST(Curves, ReverseAndHomothet) {
  const Curve c = curves::circle({1, 2}, 3.0);
  const Curve r = c.reversed();
  EXPECT_NEAR(norm_e(r.eval(r.t0()) - c.eval(c.t1())), 0.0, 1e-12);
  const Curve h = curves::homothet(c, {1, 2}, -0.5);
  for (double t = 0.0; t < 6.0; t += 0.7) {
    EXPECT_NEAR(norm_e(h.eval(t) - Vec2{1, 2}), 1.5, 1e-12);
  }
}

TEST(Curves, StarlikeRadialPoint) {
  const StarlikeCurve s(curves::heliocentric_ellipse(2.0, 0.5), {0, 0});
  for (double a = 0.1; a < kTwoPi; a += 0.5) {
    const Vec2 p = s.radial_point(from_angle(a));
    EXPECT_NEAR(norm_e(p), 2.0 / (1 + 0.5 * std::cos(a)), 1e-8);
    EXPECT_NEAR(cross(p, from_angle(a)), 0.0, 1e-9);
  }
}

TEST(Curves, SpecLanguage) {
  const auto e = PlaneContext::euclidean();
  const Curve seg = curves::from_spec("segment:0,0,2,0", e);
  EXPECT_EQ(seg.eval(0.5), (Vec2{1, 0}));
  const Curve circ = curves::from_spec("circle:0,1,1,-1.5707963267948966", e);
  EXPECT_NEAR(norm_e(circ.eval(0.0)), 0.0, 1e-15);
  const auto resolve = [&](std::string_view n) -> std::optional<Curve> {
    if (n == "seg") return seg;
    return std::nullopt;
  };
  const Curve rev = curves::from_spec("reverse:seg", e, resolve);
  EXPECT_NEAR(rev.eval(rev.t0()).x, 2.0, 1e-15);
}

TEST(Curves, Errors) {
  const auto e = PlaneContext::euclidean();
  EXPECT_EQ(code_of([&] { curves::from_spec("nosuchcurve", e); }), ErrorCode::UnresolvedName);
  EXPECT_EQ(code_of([&] { curves::segment({0, 0}, {1, 0}).eval(1.5); }),
            ErrorCode::DomainViolation);
  EXPECT_EQ(code_of([&] { StarlikeCurve(curves::circle({3, 0}, 1.0), {0, 0}); }),
            ErrorCode::NotStarlike);
}

TEST(Curves, CircleCurvatureIsReciprocalRadius) {
  const auto e = PlaneContext::euclidean();
  for (double r : {0.5, 1.0, 3.0}) {
    const Curve c = reparam_by_arclength(curves::circle({0.2, -0.1}, r), e);
    for (double s : {0.3, 1.1, 2.0}) {
      const auto est = busemann_curvature_limit(c, e, s * r, 1e-2 * r);
      EXPECT_NEAR(est.value, 1.0 / r, 1e-6) << r;
    }
  }
}
