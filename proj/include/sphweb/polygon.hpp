#pragma once

// Spherical geodesic polygons with prescribed edge lengths: classification
// (proper / internally circumscribed / Dido), the circumscribed-polygon
// solver, constrained area maximization, area derivatives with respect to a
// single edge length, and the Lexell-circle locus check.

#include "sphweb/sphere.hpp"

#include <cstdint>

namespace sphweb {

inline constexpr double kCocircularTol = 1e-8;   // radius spread for cocircularity
inline constexpr double kDidoTol = 1e-8;         // center-to-edge-midpoint distance
inline constexpr double kProperMargin = 1e-9;    // strictness margin for proper tests
inline constexpr double kMaximizeAreaTol = 1e-6; // optimizer-vs-solver agreement

// Cyclic list of prescribed edge lengths for a closed geodesic polygon.
// Feasibility: n >= 3, each length in (0, pi), sum < 2*pi, and the longest
// length shorter than the sum of the others.
struct EdgeLengthSpec {
  std::vector<double> lengths;

  explicit EdgeLengthSpec(std::vector<double> ls);  // throws Infeasible

  int size() const { return static_cast<int>(lengths.size()); }
  double sum() const;
  int longest() const;  // index of the (first) longest edge
};

enum class CenterSide { Inside, Boundary, Outside };
const char* center_side_name(CenterSide side);

// A polygon whose vertices lie on a common circle of spherical radius
// `circumradius` < pi/2, realizing the given edge lengths.  `side` records
// where the circle's center sits relative to the polygon.
struct CircumscribedPolygon {
  SphericalPolygon polygon;
  double circumradius;
  CenterSide side;
};

// Deterministic circumscribed realization of the spec.  The circumradius is
// found by bisecting the closure equation with azimuthal angles
// phi_i(r) = arccos((cos l_i - cos^2 r) / sin^2 r): center-inside closure is
// sum phi_i = 2*pi, center-outside closure is sum_{i != max} phi_i = phi_max,
// and the Dido boundary (r = l_max / 2) separates the two regimes.
CircumscribedPolygon solve_circumscribed(const EdgeLengthSpec& spec);

// Same, but requiring the center on a given side.  When the spec sits at the
// Dido boundary that solution is returned for either request; otherwise a
// mismatch raises ModeUnavailable.
CircumscribedPolygon solve_circumscribed(const EdgeLengthSpec& spec, bool center_inside);

// Multi-start constrained maximization of signed area over polygons with the
// prescribed edge lengths (projected gradient ascent on vertex positions with
// exact length restoration).  The result is verified against the
// circumscribed solver: cocircular within 1e-6 and area within 1e-6.
SphericalPolygon maximize_area(const EdgeLengthSpec& spec, std::uint64_t seed, int starts = 32);

// d(max area)/d(length of `edge`): central finite difference at step h, each
// evaluation re-maximized through the circumscribed solver.  Positive means
// lengthening the edge grows the maximal area.
double area_derivative(const SphericalPolygon& p, int edge, double h = 1e-4);

struct PolygonClassification {
  bool proper = false;
  std::vector<double> edge_lengths;
  double perimeter = 0.0;
  bool cocircular = false;
  std::optional<Circumcircle> circumcircle;
  // Location of the circumcircle center relative to the polygon; nullopt
  // when not cocircular.  center_edge is the boundary edge index (Boundary)
  // or the nearest edge index (Outside), -1 otherwise.
  std::optional<Location> center_location;
  int center_edge = -1;
  bool dido = false;
  int dido_edge = -1;
};

PolygonClassification classify(const SphericalPolygon& p);

// Corollary check: with P internally circumscribed (center inside or on the
// boundary) and Q edgewise no longer than P, reports whether area(Q) stays
// below area(P) and whether the two are congruent by a rotation.
struct DominatedAreaVerdict {
  bool q_area_leq = false;
  bool congruent = false;
  double area_p = 0.0;
  double area_q = 0.0;
};
DominatedAreaVerdict dominated_area_check(const SphericalPolygon& p, const SphericalPolygon& q);

// Small circle through >= 3 points: axis, angular radius, and the largest
// angular deviation of any point from that radius.
struct CocircularFit {
  Vec3 axis;
  double radius;
  double residual;
};
CocircularFit cocircular_fit(std::span<const Vec3> points);

// Checks that equal-area triangle apexes over a fixed base lie on the circle
// through the antipodes of the base endpoints.
struct LexellCheck {
  bool cocircular = false;     // apexes + antipodes fit a circle within 1e-6
  double circle_residual = 0.0;
  bool areas_equal = false;    // precondition: apex areas agree within 1e-8
  double area_spread = 0.0;
};
LexellCheck lexell_locus_check(const GeodesicArc& base, std::span<const Vec3> apexes);

}  // namespace sphweb
