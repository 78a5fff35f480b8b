// Small deterministic 2-D linear programming and half-plane region
// classification.
//
// Regions here are intersections of half-planes a*x + b*y <= c. Feasibility
// and optimization use an incremental LP restricted to a large bounding box;
// the classifier distinguishes empty, point, line/segment and full-dimension
// regions by re-solving against margin-shrunk constraints and probing
// extents along four independent directions.

#pragma once

#include <array>
#include <optional>
#include <vector>

namespace evcg::geom {

struct HalfPlane {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;  // a*x + b*y <= c
};

inline constexpr double kGeomTol = 1e-9;
inline constexpr double kBound = 1e6;  // implicit |x|, |y| box

using Point2 = std::array<double, 2>;

/// Minimizes cx*x + cy*y over the half-plane intersection within the
/// bounding box. Returns a minimizer, or nothing when infeasible. With a
/// zero objective this is a pure feasibility probe. Deterministic: the
/// constraints are processed in the given order with fixed tie rules.
std::optional<Point2> solve_lp2(double cx, double cy,
                                const std::vector<HalfPlane>& halfplanes,
                                double bound = kBound);

enum class RegionClass { Empty, Point, LineSegment, Polyhedron };

struct RegionSummary {
  RegionClass classification = RegionClass::Empty;
  std::optional<Point2> representative;
};

/// Classifies the intersection and produces a representative point. For a
/// full-dimension region the representative sits at least `tol` inside
/// every constraint (deeper when the region allows it).
RegionSummary classify_region(const std::vector<HalfPlane>& halfplanes,
                              double tol = kGeomTol);

/// True when the point satisfies every half-plane within tol.
bool contains(const std::vector<HalfPlane>& halfplanes, const Point2& p,
              double tol = kGeomTol);

}  // namespace evcg::geom
