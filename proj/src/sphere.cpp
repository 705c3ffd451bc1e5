#include "sphweb/sphere.hpp"

#include <Eigen/Dense>

#include <limits>

namespace sphweb {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::AntipodalInput: return "AntipodalInput";
    case Errc::DegenerateVertex: return "DegenerateVertex";
    case Errc::DegeneratePolygon: return "DegeneratePolygon";
    case Errc::CollinearPoints: return "CollinearPoints";
    case Errc::HalfwayAntipodal: return "HalfwayAntipodal";
    case Errc::OutsideHemisphere: return "OutsideHemisphere";
    case Errc::Infeasible: return "Infeasible";
    case Errc::ModeUnavailable: return "ModeUnavailable";
    case Errc::ConvergenceFailure: return "ConvergenceFailure";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::ParseError: return "ParseError";
    case Errc::NonManifold: return "NonManifold";
    case Errc::EulerViolation: return "EulerViolation";
    case Errc::NotInscribed: return "NotInscribed";
    case Errc::CenterOutside: return "CenterOutside";
    case Errc::P0NotInterior: return "P0NotInterior";
    case Errc::AntipodalEdge: return "AntipodalEdge";
    case Errc::NotConvex: return "NotConvex";
    case Errc::NonPlanarFace: return "NonPlanarFace";
    case Errc::NotTight: return "NotTight";
    case Errc::AmbiguousOrientation: return "AmbiguousOrientation";
    case Errc::NotThreeConnected: return "NotThreeConnected";
    case Errc::GraphMismatch: return "GraphMismatch";
    case Errc::GuardViolated: return "GuardViolated";
  }
  return "UnknownError";
}

const char* location_name(Location loc) {
  switch (loc) {
    case Location::Inside: return "inside";
    case Location::Boundary: return "boundary";
    case Location::Outside: return "outside";
  }
  return "unknown";
}

Vec3 arc_midpoint(const Vec3& a, const Vec3& b) {
  if (nearly_antipodal(a, b))
    fail(Errc::AntipodalInput, "arc midpoint of an antipodal pair is not unique");
  return unit_point(a + b);
}

Vec3 tangent_toward(const Vec3& from, const Vec3& to) {
  if (nearly_antipodal(from, to))
    fail(Errc::AntipodalInput, "tangent direction undefined for antipodal points");
  const Vec3 t = to - from.dot(to) * from;
  const double n = t.norm();
  if (n < 1e-14) fail(Errc::DegenerateVertex, "tangent direction undefined for coincident points");
  return t / n;
}

Eigen::Matrix<double, 3, 2> tangent_basis(const Vec3& v) {
  // Fixed reference direction keeps the basis deterministic.
  const Vec3 ref = std::abs(v.z()) < 0.9 ? Vec3(0, 0, 1) : Vec3(1, 0, 0);
  const Vec3 e1 = unit_point(ref.cross(v));
  const Vec3 e2 = v.cross(e1);
  Eigen::Matrix<double, 3, 2> basis;
  basis.col(0) = e1;
  basis.col(1) = e2;
  return basis;
}

double interior_angle(const Vec3& prev, const Vec3& vertex, const Vec3& next) {
  if (prev.dot(vertex) > 1.0 - kUnitTol || next.dot(vertex) > 1.0 - kUnitTol)
    fail(Errc::DegenerateVertex, "interior angle needs the vertex distinct from its neighbors");
  const Vec3 tp = tangent_toward(vertex, prev);
  const Vec3 tn = tangent_toward(vertex, next);
  double ang = std::atan2(tp.cross(tn).dot(vertex), tp.dot(tn));
  if (ang <= 0.0) ang += kTwoPi;
  return ang;
}

GeodesicArc::GeodesicArc(const Vec3& a_, const Vec3& b_) : a(unit_point(a_)), b(unit_point(b_)) {
  if (nearly_antipodal(a, b)) fail(Errc::AntipodalInput, "geodesic arc endpoints are antipodal");
}

SphericalPolygon::SphericalPolygon(std::vector<Vec3> vertices) : verts_(std::move(vertices)) {
  const int n = static_cast<int>(verts_.size());
  if (n < 3) fail(Errc::DegeneratePolygon, "a spherical polygon needs at least 3 vertices");
  for (auto& v : verts_) v = unit_point(v);
  for (int i = 0; i < n; ++i) {
    const Vec3& a = verts_[i];
    const Vec3& b = verts_[(i + 1) % n];
    if (nearly_antipodal(a, b))
      fail(Errc::DegeneratePolygon, "consecutive vertices " + std::to_string(i) + "," +
                                        std::to_string((i + 1) % n) + " are antipodal");
    if (a.dot(b) > 1.0 - kUnitTol)
      fail(Errc::DegeneratePolygon, "consecutive vertices " + std::to_string(i) + "," +
                                        std::to_string((i + 1) % n) + " coincide");
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (verts_[i].dot(verts_[j]) > 1.0 - kUnitTol)
        fail(Errc::DegeneratePolygon,
             "vertex repeated at indices " + std::to_string(i) + "," + std::to_string(j));
}

std::vector<double> SphericalPolygon::edge_lengths() const {
  std::vector<double> out(size());
  for (int i = 0; i < size(); ++i) out[i] = edge_length(i);
  return out;
}

double SphericalPolygon::perimeter() const {
  double sum = 0.0;
  for (int i = 0; i < size(); ++i) sum += edge_length(i);
  return sum;
}

SphericalPolygon SphericalPolygon::reversed() const {
  std::vector<Vec3> rev(verts_.rbegin(), verts_.rend());
  return SphericalPolygon(std::move(rev));
}

namespace {

// Anchor for the triangle fan: must be non-antipodal to every vertex.  The
// vertex-sum direction works for everything this library produces; a few
// deterministic fallbacks cover degenerate sums.
Vec3 fan_anchor(std::span<const Vec3> verts) {
  Vec3 s = Vec3::Zero();
  for (const auto& v : verts) s += v;
  auto usable = [&](const Vec3& c) {
    for (const auto& v : verts)
      if (c.dot(v) <= -1.0 + kAntipodalTol) return false;
    return true;
  };
  if (s.norm() > 1e-9) {
    const Vec3 c = s.normalized();
    if (usable(c)) return c;
  }
  if (!nearly_antipodal(verts[0], verts[1])) {
    const Vec3 c = arc_midpoint(verts[0], verts[1]);
    if (usable(c)) return c;
  }
  for (const Vec3& c : {Vec3(0, 0, 1), Vec3(1, 0, 0), Vec3(0, 1, 0),
                        Vec3(1, 1, 1).normalized(), Vec3(1, -1, 1).normalized()})
    if (usable(c)) return c;
  fail(Errc::DegeneratePolygon, "no usable fan anchor for signed area");
}

void check_area_input(std::span<const Vec3> verts) {
  const size_t n = verts.size();
  if (n < 3) fail(Errc::DegeneratePolygon, "signed area needs at least 3 vertices");
  for (size_t i = 0; i < n; ++i) {
    const Vec3& a = verts[i];
    const Vec3& b = verts[(i + 1) % n];
    if (nearly_antipodal(a, b))
      fail(Errc::DegeneratePolygon, "consecutive vertices are antipodal");
    if (a.dot(b) > 1.0 - kUnitTol) fail(Errc::DegeneratePolygon, "consecutive vertices coincide");
  }
}

}  // namespace

double signed_area(std::span<const Vec3> verts, const Vec3& anchor) {
  check_area_input(verts);
  const size_t n = verts.size();
  double total = 0.0;
  for (size_t i = 0; i < n; ++i) total += triangle_excess(anchor, verts[i], verts[(i + 1) % n]);
  return total;
}

double signed_area(std::span<const Vec3> verts) {
  check_area_input(verts);
  return signed_area(verts, fan_anchor(verts));
}

double signed_area(const SphericalPolygon& p) { return signed_area(std::span(p.vertices())); }

double signed_area(const SphericalPolygon& p, const Vec3& anchor) {
  return signed_area(std::span(p.vertices()), anchor);
}

Circumcircle circumcircle3(const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 n = (b - a).cross(c - a);
  if (n.norm() < 1e-14)
    fail(Errc::CollinearPoints, "circumcircle undefined for coincident or collinear points");
  Vec3 center = n.normalized();
  if (center.dot(a) < 0.0) center = -center;
  const double cosr = center.dot(a);
  if (cosr <= kAntipodalTol)
    fail(Errc::CollinearPoints,
         "points lie on one great circle; circumradius would reach pi/2");
  const double r = std::acos(std::clamp(cosr, -1.0, 1.0));
  const double spread = std::max({std::abs(geodesic_distance(center, a) - r),
                                  std::abs(geodesic_distance(center, b) - r),
                                  std::abs(geodesic_distance(center, c) - r)});
  if (spread > 1e-10)
    fail(Errc::CollinearPoints, "circumcircle distances disagree by " + std::to_string(spread));
  return Circumcircle{center, r};
}

double curve_length(std::span<const Vec3> verts, bool closed) {
  const size_t n = verts.size();
  double sum = 0.0;
  const size_t edges = closed ? n : (n > 0 ? n - 1 : 0);
  for (size_t i = 0; i < edges; ++i) sum += geodesic_distance(verts[i], verts[(i + 1) % n]);
  return sum;
}

Vec3 point_along(std::span<const Vec3> verts, double s, bool closed) {
  const size_t n = verts.size();
  const size_t edges = closed ? n : n - 1;
  for (size_t i = 0; i < edges; ++i) {
    const Vec3& a = verts[i];
    const Vec3& b = verts[(i + 1) % n];
    const double d = geodesic_distance(a, b);
    if (s <= d || i + 1 == edges) {
      if (d < 1e-15) return a;
      return geodesic_point(a, tangent_toward(a, b), std::min(s, d));
    }
    s -= d;
  }
  return verts[0];
}

namespace {

// Exact minimum of n.dot(p) over the shortest arc a -> b.  On the arc,
// n.dot(p(t)) = A cos t + B sin t; the global minimizer of that sinusoid is
// included when it falls inside the arc's parameter range.
double arc_min_dot(const Vec3& n, const Vec3& a, const Vec3& b) {
  const double len = geodesic_distance(a, b);
  double m = std::min(n.dot(a), n.dot(b));
  if (len < 1e-15) return m;
  const Vec3 t = tangent_toward(a, b);
  const double A = n.dot(a);
  const double B = n.dot(t);
  const double amp = std::hypot(A, B);
  if (amp < 1e-18) return m;
  double tmin = std::atan2(-B, -A);
  if (tmin < 0.0) tmin += kTwoPi;
  if (tmin <= len) m = std::min(m, -amp);
  return m;
}

}  // namespace

double min_dot_along(std::span<const Vec3> verts, const Vec3& n, bool closed) {
  const size_t count = verts.size();
  const size_t edges = closed ? count : count - 1;
  double m = n.dot(verts[0]);
  for (size_t i = 0; i < edges; ++i)
    m = std::min(m, arc_min_dot(n, verts[i], verts[(i + 1) % count]));
  return m;
}

std::optional<Vec3> enclosing_hemisphere(std::span<const Vec3> closed_curve) {
  const double total = curve_length(closed_curve, true);
  if (!(total < kTwoPi)) return std::nullopt;
  const Vec3 f1 = closed_curve[0];
  const Vec3 f2 = point_along(closed_curve, total / 2.0, true);
  if (nearly_antipodal(f1, f2))
    fail(Errc::HalfwayAntipodal, "halfway points are antipodal despite length < 2*pi");
  return arc_midpoint(f1, f2);
}

Vec3 closed_hemisphere_center(std::span<const Vec3> open_curve) {
  if (open_curve.size() < 2)
    fail(Errc::DegenerateVertex, "open curve needs at least two vertices");
  return arc_midpoint(open_curve.front(), open_curve.back());
}

std::optional<HemisphereCertificate> face_hemisphere(std::span<const Vec3> closed_curve) {
  const double total = curve_length(closed_curve, true);
  if (total < kTwoPi - kBoundaryTol) {
    const Vec3 center = *enclosing_hemisphere(closed_curve);
    return HemisphereCertificate{center, min_dot_along(closed_curve, center, true), true};
  }
  if (total > kTwoPi + kBoundaryTol) return std::nullopt;
  // Perimeter at 2*pi: both halves between any halving pair have length pi,
  // so the closed hemisphere about the pair's midpoint contains the curve.
  // Scan start offsets until the halving pair is non-antipodal.
  for (int k = 0; k < 16; ++k) {
    const double s0 = total * static_cast<double>(k) / 16.0;
    const Vec3 f1 = point_along(closed_curve, s0, true);
    const Vec3 f2 = point_along(closed_curve, std::fmod(s0 + total / 2.0, total), true);
    if (nearly_antipodal(f1, f2)) continue;
    const Vec3 center = arc_midpoint(f1, f2);
    const double margin = min_dot_along(closed_curve, center, true);
    if (margin >= -kHemisphereSlack) return HemisphereCertificate{center, margin, false};
  }
  return std::nullopt;
}

Mat3 best_rotation(std::span<const Vec3> from, std::span<const Vec3> to) {
  if (from.size() != to.size() || from.empty())
    fail(Errc::PreconditionViolated, "rotation alignment needs matching nonempty point sets");
  Mat3 h = Mat3::Zero();
  for (size_t i = 0; i < from.size(); ++i) h += from[i] * to[i].transpose();
  Eigen::JacobiSVD<Mat3> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 r = svd.matrixV() * svd.matrixU().transpose();
  if (r.determinant() < 0.0) {
    Mat3 d = Mat3::Identity();
    d(2, 2) = -1.0;
    r = svd.matrixV() * d * svd.matrixU().transpose();
  }
  return r;
}

double rotation_alignment_residual(std::span<const Vec3> from, std::span<const Vec3> to) {
  const Mat3 r = best_rotation(from, to);
  double worst = 0.0;
  for (size_t i = 0; i < from.size(); ++i)
    worst = std::max(worst, geodesic_distance(Vec3(r * from[i]), to[i]));
  return worst;
}

double point_to_arc_distance(const Vec3& p, const Vec3& a, const Vec3& b) {
  const Vec3 cr = a.cross(b);
  const double crn = cr.norm();
  if (crn < 1e-14) return std::min(geodesic_distance(p, a), geodesic_distance(p, b));
  const Vec3 m = cr / crn;
  // Closest point on the full great circle.
  const Vec3 foot = p - p.dot(m) * m;
  const double fn = foot.norm();
  if (fn < 1e-14) return kPi / 2.0;  // p is the circle's pole
  const Vec3 q = foot / fn;
  const bool within = a.cross(q).dot(m) >= -1e-14 && q.cross(b).dot(m) >= -1e-14;
  if (within) return std::abs(std::asin(std::clamp(p.dot(m), -1.0, 1.0)));
  return std::min(geodesic_distance(p, a), geodesic_distance(p, b));
}

std::pair<double, int> distance_to_boundary(const Vec3& p, const SphericalPolygon& poly) {
  double best = std::numeric_limits<double>::infinity();
  int edge = -1;
  for (int i = 0; i < poly.size(); ++i) {
    const double d = point_to_arc_distance(p, poly.vertex(i), poly.vertex(i + 1));
    if (d < best) {
      best = d;
      edge = i;
    }
  }
  return {best, edge};
}

Location point_in_polygon(const Vec3& p, const SphericalPolygon& poly,
                          const Vec3& hemisphere_center) {
  const Vec3& c = hemisphere_center;
  for (int i = 0; i < poly.size(); ++i)
    if (poly.vertex(i).dot(c) <= kUnitTol)
      fail(Errc::OutsideHemisphere,
           "polygon vertex " + std::to_string(i) + " is not in the open hemisphere");
  const double pc = p.dot(c);
  if (pc < -kUnitTol) fail(Errc::OutsideHemisphere, "query point is outside the closed hemisphere");

  if (distance_to_boundary(p, poly).first < kBoundaryTol) return Location::Boundary;
  if (pc <= kUnitTol) return Location::Outside;  // on the equator, polygon is strictly interior

  // Gnomonic projection onto the tangent plane at c.
  const auto basis = tangent_basis(c);
  auto project = [&](const Vec3& v) {
    const double t = v.dot(c);
    return Eigen::Vector2d(v.dot(basis.col(0)) / t, v.dot(basis.col(1)) / t);
  };
  const Eigen::Vector2d w = project(p);
  std::vector<Eigen::Vector2d> u(poly.size());
  for (int i = 0; i < poly.size(); ++i) u[i] = project(poly.vertex(i));

  auto is_left = [](const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& q) {
    return (b.x() - a.x()) * (q.y() - a.y()) - (q.x() - a.x()) * (b.y() - a.y());
  };
  int wn = 0;
  for (int i = 0; i < poly.size(); ++i) {
    const auto& a = u[i];
    const auto& b = u[(i + 1) % poly.size()];
    if (a.y() <= w.y()) {
      if (b.y() > w.y() && is_left(a, b, w) > 0) ++wn;
    } else {
      if (b.y() <= w.y() && is_left(a, b, w) < 0) --wn;
    }
  }
  return wn != 0 ? Location::Inside : Location::Outside;
}

}  // namespace sphweb
