// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "domconst/geometry.hpp"

using namespace domconst;

namespace {

PlanarDomain unit_square() {
  return PlanarDomain::polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

PlanarDomain l_shape() {
  return PlanarDomain::polygon({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}});
}

// Brute-force oracle: minimum distance to a dense boundary sampling.
double dense_boundary_distance(const Ellipse& e, Point2 p, int samples) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    const double t = 2.0 * std::numbers::pi * i / samples;
    const Point2 b{e.center.x + e.a * std::cos(t), e.center.y + e.b * std::sin(t)};
    best = std::min(best, distance(p, b));
  }
  return best;
}

} // namespace

TEST_CASE("domain construction validates invariants") {
  CHECK_THROWS_AS(PlanarDomain::polygon({{0, 0}, {1, 0}}), GeometryError);
  // clockwise
  CHECK_THROWS_AS(PlanarDomain::polygon({{0, 0}, {0, 1}, {1, 1}, {1, 0}}),
                  GeometryError);
  // bowtie
  CHECK_THROWS_AS(PlanarDomain::polygon({{0, 0}, {1, 1}, {1, 0}, {0, 1}}),
                  GeometryError);
  CHECK_THROWS_AS(PlanarDomain::disc({0, 0}, 0.0), GeometryError);
  CHECK_THROWS_AS(PlanarDomain::ellipse({0, 0}, 1.0, 2.0), GeometryError);
  CHECK(unit_square().area() == Catch::Approx(1.0));
  CHECK(PlanarDomain::disc({0, 0}, 1.0).area() ==
        Catch::Approx(std::numbers::pi));
}

TEST_CASE("boundary distance on the disc") {
  const PlanarDomain disc = PlanarDomain::disc({0, 0}, 1.0);
  const DistanceEval center = boundary_distance(disc, {0, 0});
  CHECK(center.value == Catch::Approx(1.0));
  CHECK(center.on_medial_axis);
  CHECK(norm(center.gradient) == Catch::Approx(1.0));

  const DistanceEval off = boundary_distance(disc, {0.5, 0.0});
  CHECK(off.value == Catch::Approx(0.5));
  CHECK_FALSE(off.on_medial_axis);
  CHECK(off.gradient.x == Catch::Approx(-1.0));
  CHECK(off.gradient.y == Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("boundary distance on the unit square") {
  const PlanarDomain sq = unit_square();
  const DistanceEval de = boundary_distance(sq, {0.25, 0.5});
  CHECK(de.value == Catch::Approx(0.25));
  CHECK(de.gradient.x == Catch::Approx(1.0));
  CHECK(de.gradient.y == Catch::Approx(0.0).margin(1e-15));
  CHECK_FALSE(de.on_medial_axis);

  // Center: four equidistant edges; the tie keeps the lowest-indexed one
  // (bottom edge), whose gradient points up.
  const DistanceEval center = boundary_distance(sq, {0.5, 0.5});
  CHECK(center.value == Catch::Approx(0.5));
  CHECK(center.on_medial_axis);
  CHECK(center.gradient.x == Catch::Approx(0.0).margin(1e-15));
  CHECK(center.gradient.y == Catch::Approx(1.0));
}

TEST_CASE("boundary distance rejects exterior and boundary points") {
  const PlanarDomain sq = unit_square();
  CHECK_THROWS_AS(boundary_distance(sq, {2.0, 0.5}), DomainMembershipError);
  CHECK_THROWS_AS(boundary_distance(sq, {0.0, 0.5}), DomainMembershipError);
  const PlanarDomain disc = PlanarDomain::disc({0, 0}, 1.0);
  CHECK_THROWS_AS(boundary_distance(disc, {1.0, 0.0}), DomainMembershipError);
}

TEST_CASE("ellipse nearest point matches dense boundary sampling") {
  const PlanarDomain el = PlanarDomain::ellipse({0, 0}, 2.0, 1.0);
  const Ellipse& e = el.as_ellipse();

  const DistanceEval de = boundary_distance(el, {1.5, 0.0});
  CHECK(std::abs(de.value - dense_boundary_distance(e, {1.5, 0.0}, 1000000)) <
        1e-9);
  CHECK(de.value == Catch::Approx(0.5).epsilon(1e-9));

  for (const Point2 p : {Point2{0.3, 0.4}, Point2{-1.2, 0.25}, Point2{0.9, -0.7},
                         Point2{1.93, 0.01}}) {
    const DistanceEval q = boundary_distance(el, p);
    CHECK(std::abs(q.value - dense_boundary_distance(e, p, 1000000)) < 1e-9);
  }

  // Points between the curvature centers have two symmetric nearest points.
  const DistanceEval mid = boundary_distance(el, {0.5, 0.0});
  CHECK(mid.on_medial_axis);
  const DistanceEval center = boundary_distance(el, {0.0, 0.0});
  CHECK(center.value == Catch::Approx(1.0));
  CHECK(center.on_medial_axis);
}

TEST_CASE("distance gradient has unit norm off the medial axis") {
  const PlanarDomain domains[] = {unit_square(), l_shape(),
                                  PlanarDomain::disc({0.5, -0.25}, 2.0),
                                  PlanarDomain::ellipse({0, 0}, 2.0, 1.0)};
  for (const PlanarDomain& d : domains) {
    const BoundingBox bb = d.bounding_box();
    int checked = 0;
    for (int i = 0; i < 40; ++i) {
      for (int j = 0; j < 40; ++j) {
        const Point2 p{bb.xmin + (i + 0.5) / 40.0 * (bb.xmax - bb.xmin),
                       bb.ymin + (j + 0.5) / 40.0 * (bb.ymax - bb.ymin)};
        if (!d.contains(p)) continue;
        const DistanceEval de = boundary_distance(d, p);
        if (de.on_medial_axis) continue;
        CHECK(std::abs(norm(de.gradient) - 1.0) < 1e-12);
        ++checked;
      }
    }
    CHECK(checked > 100);
  }
}

TEST_CASE("directional boundary distance") {
  const PlanarDomain disc = PlanarDomain::disc({0, 0}, 1.0);
  for (double th : {0.0, 0.3, 1.2, 2.9}) {
    CHECK(directional_boundary_distance(disc, {0, 0},
                                        {std::cos(th), std::sin(th)}) ==
          Catch::Approx(1.0));
  }
  const PlanarDomain sq = unit_square();
  CHECK(directional_boundary_distance(sq, {0.5, 0.5}, {1, 0}) ==
        Catch::Approx(0.5));
  CHECK(directional_boundary_distance(sq, {0.25, 0.5}, {0, 1}) ==
        Catch::Approx(0.5));
  // two-sided minimum: from (0.25, 0.5) along x the left wall is nearer
  CHECK(directional_boundary_distance(sq, {0.25, 0.5}, {1, 0}) ==
        Catch::Approx(0.25));
  CHECK_THROWS_AS(directional_boundary_distance(sq, {0.5, 0.5}, {0, 0}),
                  ArgumentError);

  const PlanarDomain el = PlanarDomain::ellipse({0, 0}, 2.0, 1.0);
  CHECK(directional_boundary_distance(el, {0, 0}, {1, 0}) == Catch::Approx(2.0));
  CHECK(directional_boundary_distance(el, {0, 0}, {0, 1}) == Catch::Approx(1.0));
}

TEST_CASE("mean distance basics") {
  const PlanarDomain disc = PlanarDomain::disc({0, 0}, 1.0);
  CHECK(mean_distance(disc, {0, 0}, 64) == Catch::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(mean_distance(disc, {0, 0}, 4), ArgumentError);

  const PlanarDomain sq = unit_square();
  const double analytic =
      std::sqrt(std::numbers::pi / (2.0 * std::numbers::pi + 4.0));
  CHECK(mean_distance(sq, {0.5, 0.5}, 512) ==
        Catch::Approx(analytic).epsilon(1e-5));
}

TEST_CASE("mean distance converges under angle refinement") {
  const PlanarDomain sq = unit_square();
  const Point2 p{0.31, 0.57};

  // Richardson extrapolation of 1/D^2 in the angle count as the oracle.
  auto inv_sq = [&](int m) {
    const double d = mean_distance(sq, p, m);
    return 1.0 / (d * d);
  };
  const double extrap = (4.0 * inv_sq(1024) - inv_sq(512)) / 3.0;
  const double oracle = 1.0 / std::sqrt(extrap);
  CHECK(mean_distance(sq, p, 512) == Catch::Approx(oracle).epsilon(1e-6));

  const double d2048 = mean_distance(sq, p, 2048);
  const double d4096 = mean_distance(sq, p, 4096);
  CHECK(std::abs(d2048 - d4096) < 1e-6);
}

TEST_CASE("mean distance dominates boundary distance") {
  const PlanarDomain domains[] = {unit_square(), l_shape(),
                                  PlanarDomain::ellipse({0, 0}, 2.0, 1.0)};
  for (const PlanarDomain& d : domains) {
    const BoundingBox bb = d.bounding_box();
    for (int i = 0; i < 15; ++i) {
      for (int j = 0; j < 15; ++j) {
        const Point2 p{bb.xmin + (i + 0.5) / 15.0 * (bb.xmax - bb.xmin),
                       bb.ymin + (j + 0.5) / 15.0 * (bb.ymax - bb.ymin)};
        if (!d.contains(p)) continue;
        CHECK(mean_distance(d, p, 128) >=
              boundary_distance(d, p).value - 1e-9);
      }
    }
  }
}

TEST_CASE("convexity check") {
  CHECK(convexity_check(unit_square().as_polygon()));
  CHECK(convexity_check(
      PlanarDomain::polygon({{0, 0}, {1, 0}, {0, 1}}).as_polygon()));
  CHECK_FALSE(convexity_check(l_shape().as_polygon()));
  // collinear vertices still count as convex
  CHECK(convexity_check(
      PlanarDomain::polygon({{0, 0}, {0.5, 0}, {1, 0}, {1, 1}, {0, 1}})
          .as_polygon()));
}

TEST_CASE("exterior cone angle") {
  CHECK(exterior_cone_angle(unit_square().as_polygon()).theta ==
        std::numbers::pi / 2);
  CHECK(exterior_cone_angle(
            PlanarDomain::polygon({{0, 0}, {1, 0}, {0, 1}}).as_polygon())
            .theta == std::numbers::pi / 2);
  const ConeAngle lc = exterior_cone_angle(l_shape().as_polygon());
  CHECK(lc.theta == Catch::Approx(std::numbers::pi / 4));
}

TEST_CASE("exterior cone containment at the reentrant vertex") {
  // The cone of semi-angle theta around the outward bisector at the L-shape
  // notch must stay outside the polygon.
  const PlanarDomain l = l_shape();
  const double theta = exterior_cone_angle(l.as_polygon()).theta;
  const Point2 apex{1.0, 1.0};
  const Point2 bisector{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
  const double bis_angle = std::atan2(bisector.y, bisector.x);
  for (int k = -10; k <= 10; ++k) {
    const double phi = bis_angle + 0.999 * theta * k / 10.0;
    for (double t : {1e-6, 1e-3, 0.3}) {
      const Point2 p = apex + t * Point2{std::cos(phi), std::sin(phi)};
      CHECK_FALSE(l.contains(p));
    }
  }
}
