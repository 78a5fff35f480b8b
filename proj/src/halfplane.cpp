#include "evcg/halfplane.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace evcg::geom {

namespace {

constexpr double kActiveEps = 1e-12;   // violation threshold while solving
constexpr double kParallelEps = 1e-14;

double dot(const Point2& u, const Point2& v) {
  return u[0] * v[0] + u[1] * v[1];
}

std::vector<HalfPlane> normalized(const std::vector<HalfPlane>& raw,
                                  bool* contradiction) {
  std::vector<HalfPlane> out;
  out.reserve(raw.size());
  if (contradiction) *contradiction = false;
  for (const HalfPlane& h : raw) {
    const double norm = std::hypot(h.a, h.b);
    if (norm < 1e-15) {
      // 0 <= c: vacuous when c is nonnegative, contradictory otherwise
      if (h.c < -kActiveEps && contradiction) *contradiction = true;
      continue;
    }
    out.push_back({h.a / norm, h.b / norm, h.c / norm});
  }
  return out;
}

}  // namespace

std::optional<Point2> solve_lp2(double cx, double cy,
                                const std::vector<HalfPlane>& halfplanes,
                                double bound) {
  bool contradiction = false;
  std::vector<HalfPlane> hps;
  hps.reserve(halfplanes.size() + 4);
  hps.push_back({1.0, 0.0, bound});
  hps.push_back({-1.0, 0.0, bound});
  hps.push_back({0.0, 1.0, bound});
  hps.push_back({0.0, -1.0, bound});
  for (const HalfPlane& h : normalized(halfplanes, &contradiction))
    hps.push_back(h);
  if (contradiction) return std::nullopt;

  auto corner = [bound](double c) {
    return c > 0.0 ? -bound : (c < 0.0 ? bound : 0.0);
  };
  Point2 p{corner(cx), corner(cy)};

  for (std::size_t i = 4; i < hps.size(); ++i) {
    const HalfPlane& h = hps[i];
    if (h.a * p[0] + h.b * p[1] <= h.c + kActiveEps) continue;

    // The new optimum lies on this constraint's boundary line; solve the
    // 1-D problem along it against all earlier constraints.
    const Point2 base{h.a * h.c, h.b * h.c};
    const Point2 u{-h.b, h.a};
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < i; ++j) {
      const HalfPlane& g = hps[j];
      const double du = g.a * u[0] + g.b * u[1];
      const double rhs = g.c - (g.a * base[0] + g.b * base[1]);
      if (std::abs(du) <= kParallelEps) {
        if (rhs < -kGeomTol) return std::nullopt;
        continue;
      }
      if (du > 0.0)
        hi = std::min(hi, rhs / du);
      else
        lo = std::max(lo, rhs / du);
    }
    if (lo > hi + kGeomTol) return std::nullopt;

    const double m = cx * u[0] + cy * u[1];
    double t;
    if (m > kActiveEps)
      t = lo;
    else if (m < -kActiveEps)
      t = hi;
    else
      t = std::clamp(0.0, lo, hi);
    p = {base[0] + t * u[0], base[1] + t * u[1]};
  }
  return p;
}

bool contains(const std::vector<HalfPlane>& halfplanes, const Point2& p,
              double tol) {
  bool contradiction = false;
  for (const HalfPlane& h : normalized(halfplanes, &contradiction))
    if (h.a * p[0] + h.b * p[1] > h.c + tol) return false;
  return !contradiction;
}

RegionSummary classify_region(const std::vector<HalfPlane>& raw,
                              double tol) {
  bool contradiction = false;
  const std::vector<HalfPlane> hps = normalized(raw, &contradiction);
  if (contradiction) return {RegionClass::Empty, std::nullopt};

  const auto feasible = solve_lp2(0.0, 0.0, hps);
  if (!feasible) return {RegionClass::Empty, std::nullopt};

  auto shrunk = [&hps](double margin) {
    std::vector<HalfPlane> v = hps;
    for (HalfPlane& h : v) h.c -= margin;
    return v;
  };

  // Average of the four axis-extreme points within a bounding box:
  // feasible by convexity, margin-deep when the system is shrunk. Growing
  // the box from unit scale keeps representatives of unbounded regions at
  // a sensible magnitude.
  auto centered = [](const std::vector<HalfPlane>& sys, double box)
      -> std::optional<Point2> {
    Point2 acc{0.0, 0.0};
    const Point2 objs[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    for (const Point2& c : objs) {
      const auto q = solve_lp2(c[0], c[1], sys, box);
      if (!q) return std::nullopt;
      acc[0] += (*q)[0] / 4.0;
      acc[1] += (*q)[1] / 4.0;
    }
    return acc;
  };
  constexpr double kBoxes[] = {1.0, 10.0, 100.0, 1e3, 1e4, 1e5, kBound};

  if (solve_lp2(0.0, 0.0, shrunk(tol))) {
    std::optional<Point2> rep;
    for (double box : kBoxes) {
      for (double margin : {0.25, 0.05, 0.01, 1e-3, 1e-5, 1e-7, tol}) {
        if (margin < tol) continue;
        if ((rep = centered(shrunk(margin), box))) break;
      }
      if (rep) break;
    }
    if (!rep) rep = feasible;
    return {RegionClass::Polyhedron, rep};
  }

  // Degenerate region: measure extent along four independent directions.
  constexpr double kInvSqrt2 = 0.70710678118654752;
  const Point2 dirs[4] = {
      {1, 0}, {0, 1}, {kInvSqrt2, kInvSqrt2}, {kInvSqrt2, -kInvSqrt2}};
  double best_extent = 0.0;
  for (const Point2& d : dirs) {
    const auto pmin = solve_lp2(d[0], d[1], hps);
    const auto pmax = solve_lp2(-d[0], -d[1], hps);
    if (!pmin || !pmax) continue;
    best_extent = std::max(best_extent, dot(d, *pmax) - dot(d, *pmin));
  }
  std::optional<Point2> rep;
  for (double box : kBoxes)
    if ((rep = centered(hps, box))) break;
  if (!rep) rep = feasible;
  if (best_extent > tol) return {RegionClass::LineSegment, rep};
  return {RegionClass::Point, rep};
}

}  // namespace evcg::geom
