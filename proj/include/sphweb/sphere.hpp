#pragma once

// Geometry primitives on the unit sphere: geodesic arcs, angles, signed
// areas, circumcircles, hemisphere containment and point location.
//
// All points are unit 3-vectors.  Every function here is pure; all types
// are immutable values, safe to share across threads.

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sphweb {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Contractual tolerances.
inline constexpr double kUnitTol = 1e-12;       // |v|^2 - 1 after normalization
inline constexpr double kAntipodalTol = 1e-9;   // a.dot(b) must exceed -1 + this
inline constexpr double kBoundaryTol = 1e-9;    // point-location boundary band, radians
inline constexpr double kHemisphereSlack = 1e-12;  // closed-hemisphere margin floor

enum class Errc {
  AntipodalInput,
  DegenerateVertex,
  DegeneratePolygon,
  CollinearPoints,
  HalfwayAntipodal,
  OutsideHemisphere,
  Infeasible,
  ModeUnavailable,
  ConvergenceFailure,
  PreconditionViolated,
  ParseError,
  NonManifold,
  EulerViolation,
  NotInscribed,
  CenterOutside,
  P0NotInterior,
  AntipodalEdge,
  NotConvex,
  NonPlanarFace,
  NotTight,
  AmbiguousOrientation,
  NotThreeConnected,
  GraphMismatch,
  GuardViolated,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

// ---------------------------------------------------------------------------
// Point primitives.

// Normalizes to the unit sphere; rejects near-zero input.
template <typename D>
Vec3 unit_point(const Eigen::MatrixBase<D>& v) {
  const double n = v.norm();
  if (n < 1e-14) fail(Errc::DegenerateVertex, "cannot normalize a zero vector");
  return v / n;
}

// Arc length of the shortest geodesic, in [0, pi].  Antipodal inputs give pi.
template <typename A, typename B>
double geodesic_distance(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  return std::acos(std::clamp(a.dot(b), -1.0, 1.0));
}

template <typename A, typename B>
bool nearly_antipodal(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  return a.dot(b) <= -1.0 + kAntipodalTol;
}

// Midpoint of the shortest geodesic between non-antipodal points.
Vec3 arc_midpoint(const Vec3& a, const Vec3& b);

// Unit tangent vector at `from` pointing along the shortest geodesic to `to`.
Vec3 tangent_toward(const Vec3& from, const Vec3& to);

// Walks distance s from `a` along unit tangent `t` (t must be orthogonal to a).
inline Vec3 geodesic_point(const Vec3& a, const Vec3& t, double s) {
  return std::cos(s) * a + std::sin(s) * t;
}

// Deterministic orthonormal tangent basis at v; columns {e1, e2} span the
// tangent plane and {e1, e2, v} is right-handed.
Eigen::Matrix<double, 3, 2> tangent_basis(const Vec3& v);

// Angle at `vertex` between the tangent directions toward prev and next,
// in (0, 2*pi).  The angle is swept from the prev-direction to the
// next-direction counterclockwise around the outward normal at the vertex,
// so reflex angles are representable.  Collinear triples give exactly pi.
double interior_angle(const Vec3& prev, const Vec3& vertex, const Vec3& next);

// Signed excess (solid angle) of the geodesic triangle (a, b, c), in
// (-2*pi, 2*pi].  Positive when (a, b, c) is counterclockwise seen from
// outside the sphere.
inline double triangle_excess(const Vec3& a, const Vec3& b, const Vec3& c) {
  const double num = a.dot(b.cross(c));
  const double den = 1.0 + a.dot(b) + b.dot(c) + c.dot(a);
  return 2.0 * std::atan2(num, den);
}

// ---------------------------------------------------------------------------
// Geodesic arcs and polygons.

// Shortest geodesic between two non-antipodal endpoints; length < pi.
struct GeodesicArc {
  Vec3 a;
  Vec3 b;

  GeodesicArc(const Vec3& a_, const Vec3& b_);
  double length() const { return geodesic_distance(a, b); }
  Vec3 midpoint() const { return arc_midpoint(a, b); }
};

// Ordered vertex cycle; consecutive vertices distinct and non-antipodal,
// no vertex repeated anywhere, edges are shortest geodesics.  Vertex order
// carries the orientation.
class SphericalPolygon {
 public:
  explicit SphericalPolygon(std::vector<Vec3> vertices);

  int size() const { return static_cast<int>(verts_.size()); }
  const Vec3& vertex(int i) const { return verts_[wrap(i)]; }
  const std::vector<Vec3>& vertices() const { return verts_; }

  double edge_length(int i) const { return geodesic_distance(vertex(i), vertex(i + 1)); }
  std::vector<double> edge_lengths() const;
  double perimeter() const;

  SphericalPolygon reversed() const;

 private:
  int wrap(int i) const {
    const int n = size();
    return ((i % n) + n) % n;
  }
  std::vector<Vec3> verts_;
};

// Winding-weighted signed area in steradians, range (-4*pi, 4*pi).
// Counterclockwise (seen from outside the sphere) simple polygons are
// positive; reversing the vertex order negates the value.  Computed as a
// fan of signed triangle excesses about `anchor`; for simple polygons in a
// hemisphere this equals the spherical excess of the enclosed region.
double signed_area(std::span<const Vec3> vertices, const Vec3& anchor);
double signed_area(std::span<const Vec3> vertices);
double signed_area(const SphericalPolygon& p);
double signed_area(const SphericalPolygon& p, const Vec3& anchor);

// Circle on the sphere through three or more points; spherical radius is
// always taken < pi/2 (the center is chosen on the acute side).
struct Circumcircle {
  Vec3 center;
  double radius;  // radians, in (0, pi/2)
};

// Circle through three points that do not lie on one great circle.
Circumcircle circumcircle3(const Vec3& a, const Vec3& b, const Vec3& c);

// ---------------------------------------------------------------------------
// Piecewise-geodesic curves (vertex chains).

double curve_length(std::span<const Vec3> verts, bool closed);

// Point at arc length s from verts[0] along the chain.
Vec3 point_along(std::span<const Vec3> verts, double s, bool closed);

// Exact minimum of n.dot(p) over every point p of the chain (closed-form
// per-arc minimum; no sampling).
double min_dot_along(std::span<const Vec3> verts, const Vec3& n, bool closed);

// Center of an open hemisphere strictly containing the closed curve,
// constructed from the midpoint of the geodesic between the two halfway
// points of the curve.  Returns nullopt when total length >= 2*pi, where
// containment is not guaranteed.
std::optional<Vec3> enclosing_hemisphere(std::span<const Vec3> closed_curve);

// Center of the closed hemisphere containing an open curve of length <= pi:
// the midpoint of the geodesic between its endpoints.
Vec3 closed_hemisphere_center(std::span<const Vec3> open_curve);

// Hemisphere certificate for a face boundary: strict containment when the
// perimeter is < 2*pi, closed containment (margin >= -1e-12) when the
// perimeter equals 2*pi.  nullopt when no certificate could be built.
struct HemisphereCertificate {
  Vec3 center;
  double margin;  // min of center.dot(p) over the curve
  bool strict;    // margin is guaranteed positive (open-hemisphere case)
};
std::optional<HemisphereCertificate> face_hemisphere(std::span<const Vec3> closed_curve);

// ---------------------------------------------------------------------------
// Alignment.

// Proper rotation (determinant +1) minimizing sum |R*from_i - to_i|^2.
// Reflections are never returned.
Mat3 best_rotation(std::span<const Vec3> from, std::span<const Vec3> to);

// Max over i of the geodesic distance between R*from_i and to_i for the best
// rotation R.
double rotation_alignment_residual(std::span<const Vec3> from, std::span<const Vec3> to);

// ---------------------------------------------------------------------------
// Point location.

enum class Location { Inside, Boundary, Outside };

const char* location_name(Location loc);

// Spherical distance from p to the shortest arc (a, b).
double point_to_arc_distance(const Vec3& p, const Vec3& a, const Vec3& b);

// Distance from p to the polygon boundary and the index of the nearest edge.
std::pair<double, int> distance_to_boundary(const Vec3& p, const SphericalPolygon& poly);

// Winding-number point location computed in the gnomonic projection about
// hemisphere_center (which maps geodesics to straight lines).  The polygon
// must lie in the open hemisphere and p in the closed one; Boundary is
// declared within kBoundaryTol of an edge.
Location point_in_polygon(const Vec3& p, const SphericalPolygon& poly,
                          const Vec3& hemisphere_center);

}  // namespace sphweb
