// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "domconst/quadrature.hpp"

using namespace domconst;

namespace {

PlanarDomain unit_square() {
  return PlanarDomain::polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

double integrate(const QuadratureRule& rule, auto&& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    s += rule.weights[i] * f(rule.nodes[i]);
  return s;
}

// Exact integral of x^i y^j over the unit square.
double square_moment(int i, int j) { return 1.0 / ((i + 1.0) * (j + 1.0)); }

// Exact integral of x^i y^j over the triangle (0,0),(1,0),(0,1): i! j! / (i+j+2)!.
double triangle_moment(int i, int j) {
  double v = 1.0;
  for (int k = 1; k <= i; ++k) v *= k;
  for (int k = 1; k <= j; ++k) v *= k;
  for (int k = 1; k <= i + j + 2; ++k) v /= k;
  return v;
}

} // namespace

TEST_CASE("quadrature argument validation") {
  CHECK_THROWS_AS(build_quadrature(unit_square(), 0, 0), ArgumentError);
  CHECK_THROWS_AS(build_quadrature(unit_square(), 53, 0), ArgumentError);
  CHECK_THROWS_AS(build_quadrature(unit_square(), 4, -1), ArgumentError);
}

TEST_CASE("unit square weights sum to the area") {
  const QuadratureRule rule = build_quadrature(unit_square(), 4, 0);
  CHECK(std::abs(rule.total_weight() - 1.0) < 1e-12);
  for (double w : rule.weights) CHECK(w > 0.0);
}

TEST_CASE("polygon quadrature is exact up to the declared order") {
  for (int order : {1, 2, 3, 4, 6, 8}) {
    const QuadratureRule rule = build_quadrature(unit_square(), order, 0);
    for (int i = 0; i <= order; ++i)
      for (int j = 0; i + j <= order; ++j)
        CHECK(std::abs(integrate(rule, [&](Point2 p) {
                return std::pow(p.x, i) * std::pow(p.y, j);
              }) - square_moment(i, j)) < 1e-12);
  }
  const PlanarDomain tri = PlanarDomain::polygon({{0, 0}, {1, 0}, {0, 1}});
  for (int order : {2, 5, 9}) {
    const QuadratureRule rule = build_quadrature(tri, order, 1);
    for (int i = 0; i <= order; ++i)
      for (int j = 0; i + j <= order; ++j)
        CHECK(std::abs(integrate(rule, [&](Point2 p) {
                return std::pow(p.x, i) * std::pow(p.y, j);
              }) - triangle_moment(i, j)) < 1e-12);
  }
}

TEST_CASE("x^2 y^2 over the unit square with order 6") {
  const QuadratureRule rule = build_quadrature(unit_square(), 6, 0);
  const double v =
      integrate(rule, [](Point2 p) { return p.x * p.x * p.y * p.y; });
  CHECK(std::abs(v - 1.0 / 9.0) < 1e-12);
}

TEST_CASE("disc quadrature reproduces the area") {
  const PlanarDomain disc = PlanarDomain::disc({0, 0}, 1.0);
  const QuadratureRule rule = build_quadrature(disc, 6, 4);
  CHECK(std::abs(rule.total_weight() - std::numbers::pi) < 1e-6);
  for (double w : rule.weights) CHECK(w > 0.0);

  const PlanarDomain el = PlanarDomain::ellipse({1.0, -2.0}, 2.0, 0.5);
  const QuadratureRule erule = build_quadrature(el, 6, 4);
  CHECK(std::abs(erule.total_weight() - std::numbers::pi) < 1e-6);
}

TEST_CASE("disc quadrature integrates polynomials accurately") {
  const PlanarDomain disc = PlanarDomain::disc({0, 0}, 1.0);
  const QuadratureRule rule = build_quadrature(disc, 8, 4);
  // int x^2 = pi/4, int x^2 y^2 = pi/24
  CHECK(integrate(rule, [](Point2 p) { return p.x * p.x; }) ==
        Catch::Approx(std::numbers::pi / 4).epsilon(1e-10));
  CHECK(integrate(rule, [](Point2 p) { return p.x * p.x * p.y * p.y; }) ==
        Catch::Approx(std::numbers::pi / 24).epsilon(1e-10));
}

TEST_CASE("quadrature nodes are strictly inside") {
  const PlanarDomain domains[] = {
      unit_square(),
      PlanarDomain::polygon({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}),
      PlanarDomain::disc({0, 0}, 1.0), PlanarDomain::ellipse({0, 0}, 2.0, 1.0)};
  for (const PlanarDomain& d : domains) {
    const QuadratureRule rule = build_quadrature(d, 5, 2);
    for (const Point2& p : rule.nodes) CHECK(d.contains(p));
  }
}

TEST_CASE("non-convex polygons triangulate correctly") {
  const PlanarDomain l =
      PlanarDomain::polygon({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}});
  const QuadratureRule rule = build_quadrature(l, 3, 0);
  CHECK(std::abs(rule.total_weight() - 3.0) < 1e-12);
  // integral of x over the L-shape: 2 over the bottom bar + 0.5 on the top leg
  const double ix = integrate(rule, [](Point2 p) { return p.x; });
  CHECK(std::abs(ix - 2.5) < 1e-12);
}

TEST_CASE("quadrature is deterministic") {
  const PlanarDomain l =
      PlanarDomain::polygon({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}});
  const QuadratureRule a = build_quadrature(l, 7, 2);
  const QuadratureRule b = build_quadrature(l, 7, 2);
  REQUIRE(a.nodes.size() == b.nodes.size());
  for (std::size_t i = 0; i < a.nodes.size(); ++i) {
    CHECK(a.nodes[i].x == b.nodes[i].x);
    CHECK(a.nodes[i].y == b.nodes[i].y);
    CHECK(a.weights[i] == b.weights[i]);
  }
}
