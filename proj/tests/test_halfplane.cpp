#include <cmath>
#include <random>

#include "doctest.h"
#include "evcg/halfplane.hpp"

using namespace evcg::geom;

namespace {

bool near(const Point2& p, double x, double y, double tol = 1e-7) {
  return std::abs(p[0] - x) <= tol && std::abs(p[1] - y) <= tol;
}

}  // namespace

TEST_CASE("lp feasibility and optimization") {
  // unit square
  const std::vector<HalfPlane> square{
      {1, 0, 1}, {-1, 0, 0}, {0, 1, 1}, {0, -1, 0}};
  const auto feasible = solve_lp2(0, 0, square);
  REQUIRE(feasible);
  CHECK(contains(square, *feasible));

  const auto min_x = solve_lp2(1, 0, square);
  REQUIRE(min_x);
  CHECK((*min_x)[0] == doctest::Approx(0.0).epsilon(1e-9));
  const auto max_xy = solve_lp2(-1, -1, square);
  REQUIRE(max_xy);
  CHECK(near(*max_xy, 1.0, 1.0));

  // contradictory slab
  const std::vector<HalfPlane> empty{{1, 0, 0}, {-1, 0, -1}};
  CHECK(!solve_lp2(0, 0, empty));

  // near-miss antiparallel pair (the parallel branch must catch it)
  const std::vector<HalfPlane> tight{{1, 1, 1}, {-1, -1, -1.001}};
  CHECK(!solve_lp2(0, 0, tight));
}

TEST_CASE("classification: polyhedron") {
  const std::vector<HalfPlane> square{
      {1, 0, 1}, {-1, 0, 0}, {0, 1, 1}, {0, -1, 0}};
  const RegionSummary s = classify_region(square);
  CHECK(s.classification == RegionClass::Polyhedron);
  REQUIRE(s.representative);
  CHECK(contains(square, *s.representative));
  // the representative sits well inside
  CHECK((*s.representative)[0] > 0.01);
  CHECK((*s.representative)[0] < 0.99);

  // a single half-plane is an unbounded polyhedron
  const std::vector<HalfPlane> half{{1, 0, 2}};
  const RegionSummary u = classify_region(half);
  CHECK(u.classification == RegionClass::Polyhedron);
  CHECK(contains(half, *u.representative));
}

TEST_CASE("classification: point") {
  // four constraints meeting only at (2, 3)
  const std::vector<HalfPlane> pin{
      {1, 1, 5}, {-1, -1, -5}, {1, -1, -1}, {-1, 1, 1}};
  const RegionSummary s = classify_region(pin);
  CHECK(s.classification == RegionClass::Point);
  REQUIRE(s.representative);
  CHECK(near(*s.representative, 2.0, 3.0));
}

TEST_CASE("classification: line and segment") {
  // the line x + y = 1
  const std::vector<HalfPlane> line{{1, 1, 1}, {-1, -1, -1}};
  const RegionSummary s = classify_region(line);
  CHECK(s.classification == RegionClass::LineSegment);
  REQUIRE(s.representative);
  CHECK((*s.representative)[0] + (*s.representative)[1] ==
        doctest::Approx(1.0).epsilon(1e-7));

  // a bounded segment of it
  const std::vector<HalfPlane> segment{
      {1, 1, 1}, {-1, -1, -1}, {1, 0, 1}, {-1, 0, 0}};
  const RegionSummary t = classify_region(segment);
  CHECK(t.classification == RegionClass::LineSegment);
  CHECK(contains(segment, *t.representative, 1e-7));
}

TEST_CASE("classification: empty") {
  const std::vector<HalfPlane> empty{{0, 1, 0}, {0, -1, -1}};
  CHECK(classify_region(empty).classification == RegionClass::Empty);

  // zero-coefficient contradiction 0 <= -1
  const std::vector<HalfPlane> silly{{0, 0, -1}};
  CHECK(classify_region(silly).classification == RegionClass::Empty);
  CHECK(!solve_lp2(0, 0, silly));
}

TEST_CASE("no constraints covers the plane") {
  const RegionSummary s = classify_region({});
  CHECK(s.classification == RegionClass::Polyhedron);
  REQUIRE(s.representative);
}

TEST_CASE("random systems agree with a brute-force grid oracle") {
  // The LP's feasibility answer and the classifier's representative are
  // checked against exhaustive sampling of a coarse lattice. A grid hit
  // implies feasibility; a representative implies containment; and a
  // clearly-2D sample count implies a polyhedron verdict.
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_int_distribution<int> count(1, 6);
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<HalfPlane> hps;
    const int m = count(rng);
    for (int k = 0; k < m; ++k)
      hps.push_back({coef(rng), coef(rng), coef(rng)});

    int hits = 0;
    bool interior_hit = false;
    for (int i = -12; i <= 12; ++i) {
      for (int j = -12; j <= 12; ++j) {
        const Point2 p{i / 4.0, j / 4.0};
        if (contains(hps, p, 0.0)) ++hits;
        if (contains(hps, p, -0.1)) interior_hit = true;  // 0.1 deep
      }
    }

    const RegionSummary s = classify_region(hps);
    if (hits > 0)
      CHECK(s.classification != RegionClass::Empty);
    if (s.classification != RegionClass::Empty) {
      REQUIRE(s.representative);
      CHECK(contains(hps, *s.representative, 1e-7));
    }
    if (interior_hit)
      CHECK(s.classification == RegionClass::Polyhedron);
  }
}
