#pragma once

//! @file
//! Convex quadrilaterals: validation, shape classes, canonical affine
//! normal forms and the right-angle frame used by the closed-form paths.

#include <quadell/conic.hpp>
#include <quadell/errors.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

namespace quadell {

enum class QuadShape
{
  General,
  Trapezoid,
  Parallelogram
};

inline std::string_view to_string(QuadShape s)
{
  switch (s) {
  case QuadShape::General: return "general";
  case QuadShape::Trapezoid: return "trapezoid";
  case QuadShape::Parallelogram: return "parallelogram";
  }
  return "unknown";
}

//! Four strictly convex vertices in counterclockwise order.
struct ConvexQuadrilateral
{
  std::array<Point, 4> vertices;
  QuadShape shape = QuadShape::General;

  const Point& operator[](int i) const { return vertices[static_cast<std::size_t>(((i % 4) + 4) % 4)]; }

  //! Edge i runs from vertex i to vertex i+1.
  Point edge(int i) const { return (*this)[i + 1] - (*this)[i]; }

  double perimeter() const
  {
    double p = 0;
    for (int i = 0; i < 4; ++i)
      p += edge(i).norm();
    return p;
  }

  double diameter() const
  {
    double d = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        d = std::max(d, ((*this)[i] - (*this)[j]).norm());
    return d;
  }

  Point centroid() const
  {
    return 0.25 * (vertices[0] + vertices[1] + vertices[2] + vertices[3]);
  }

  //! Strict interior test.
  bool contains(const Point& x) const
  {
    for (int i = 0; i < 4; ++i) {
      const Point e = edge(i);
      const Point w = x - (*this)[i];
      if (e.x() * w.y() - e.y() * w.x() <= 0)
        return false;
    }
    return true;
  }
};

inline double cross(const Point& a, const Point& b) { return a.x() * b.y() - a.y() * b.x(); }

namespace detail {

inline constexpr double parallel_tol = 1e-10;

inline bool parallel(const Point& a, const Point& b)
{
  return std::abs(cross(a, b)) <= parallel_tol * a.norm() * b.norm();
}

} // namespace detail

//! Validates four vertices given in boundary order. Clockwise input is
//! reversed (vertex 0 stays first).
inline ConvexQuadrilateral validate(std::array<Point, 4> v)
{
  for (const auto& p : v)
    if (!p.allFinite())
      throw ValidationError("finite", "vertex coordinates must be finite");

  double scale = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      scale = std::max(scale, (v[i] - v[j]).norm());
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if ((v[i] - v[j]).norm() <= 1e-12 * scale || scale == 0)
        throw ValidationError("distinct", "vertices must be distinct");

  const double eps = 1e-12 * scale * scale;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      for (int k = j + 1; k < 4; ++k)
        if (std::abs(cross(v[j] - v[i], v[k] - v[i])) <= eps)
          throw ValidationError("collinear", "three vertices are collinear");

  std::array<double, 4> turn{};
  for (int i = 0; i < 4; ++i) {
    const Point& a = v[i];
    const Point& b = v[(i + 1) % 4];
    const Point& c = v[(i + 2) % 4];
    turn[i] = cross(b - a, c - b);
  }
  const bool ccw = std::all_of(turn.begin(), turn.end(), [](double x) { return x > 0; });
  const bool cw = std::all_of(turn.begin(), turn.end(), [](double x) { return x < 0; });
  if (!ccw && !cw) {
    // Mixed turns: either a reflex vertex or a crossing boundary.
    const auto side = [&](int a, int b, int x) { return cross(v[b] - v[a], v[x] - v[a]) > 0; };
    const bool crossing = side(0, 2, 1) == side(0, 2, 3) && side(1, 3, 0) == side(1, 3, 2);
    throw ValidationError(crossing ? "simple" : "convex",
                          crossing ? "boundary is self-intersecting" : "quadrilateral is not convex");
  }
  if (cw)
    std::swap(v[1], v[3]);

  ConvexQuadrilateral q{v, QuadShape::General};
  const int pairs = int(detail::parallel(q.edge(0), q.edge(2))) +
                    int(detail::parallel(q.edge(1), q.edge(3)));
  q.shape = pairs == 0 ? QuadShape::General
                       : (pairs == 1 ? QuadShape::Trapezoid : QuadShape::Parallelogram);
  return q;
}

//! Validates four points given in any order, sorted by angle about their
//! centroid.
inline ConvexQuadrilateral from_vertex_set(std::array<Point, 4> v)
{
  for (const auto& p : v)
    if (!p.allFinite())
      throw ValidationError("finite", "vertex coordinates must be finite");
  const Point c = 0.25 * (v[0] + v[1] + v[2] + v[3]);
  std::array<Point, 4> sorted = v;
  std::stable_sort(sorted.begin(), sorted.end(), [&](const Point& a, const Point& b) {
    return std::atan2(a.y() - c.y(), a.x() - c.x()) < std::atan2(b.y() - c.y(), b.x() - c.x());
  });
  // Keep the caller's first point first, so simple inputs stay recognizable.
  const auto it = std::find_if(sorted.begin(), sorted.end(), [&](const Point& p) { return p == v[0]; });
  std::rotate(sorted.begin(), it, sorted.end());
  return validate(sorted);
}

//! The quadrilateral (0,0), (1,0), (s,t), (0,1).
inline ConvexQuadrilateral canonical_quad(double s, double t)
{
  return validate({Point(0, 0), Point(1, 0), Point(s, t), Point(0, 1)});
}

//! The right trapezoid (0,0), (1,0), (1,t), (0,1).
inline ConvexQuadrilateral canonical_trapezoid(double t)
{
  return validate({Point(0, 0), Point(1, 0), Point(1, t), Point(0, 1)});
}

//! Vertex roles: O and R are opposite, P follows O, Q precedes O.
struct VertexRoles
{
  int O = 0, P = 1, R = 2, Q = 3;
};

inline VertexRoles rotation_roles(int first)
{
  return {first % 4, (first + 1) % 4, (first + 2) % 4, (first + 3) % 4};
}

struct CanonicalQuad
{
  enum class Kind
  {
    GeneralST,
    TrapezoidT
  };
  Kind kind = Kind::GeneralST;
  double s = 0;
  double t = 0;
  AffineMap to_canonical; //!< original coordinates → canonical coordinates
  VertexRoles roles;
};

namespace detail {

inline AffineMap affine_frame(const Point& O, const Point& P, const Point& Q)
{
  Eigen::Matrix2d basis;
  basis.col(0) = P - O;
  basis.col(1) = Q - O;
  const Eigen::Matrix2d inv = basis.inverse();
  return {inv, -inv * O};
}

} // namespace detail

//! Affine normal form: O ↦ (0,0), P ↦ (1,0), Q ↦ (0,1) and R ↦ (s,t).
//!
//! The first counterclockwise rotation of the labels that qualifies is used:
//! for general shapes that is the given labeling (convexity already forces
//! s, t > 0 and s + t > 1); for trapezoids it is the first rotation with
//! PR parallel to OQ, and s is set to exactly 1.
inline CanonicalQuad canonicalize(const ConvexQuadrilateral& quad)
{
  if (quad.shape == QuadShape::Parallelogram)
    throw UnsupportedShapeError("parallelograms have no canonical (s,t) form");
  for (int i = 0; i < 4; ++i) {
    const VertexRoles r = rotation_roles(i);
    const bool pr_par_oq = detail::parallel(quad.edge(i + 1), quad.edge(i + 3));
    if (quad.shape == QuadShape::Trapezoid && !pr_par_oq)
      continue;
    const AffineMap m = detail::affine_frame(quad[r.O], quad[r.P], quad[r.Q]);
    const Point st = m(quad[r.R]);
    CanonicalQuad c;
    c.to_canonical = m;
    c.roles = r;
    c.t = st.y();
    if (quad.shape == QuadShape::Trapezoid) {
      c.kind = CanonicalQuad::Kind::TrapezoidT;
      c.s = 1;
    } else {
      c.kind = CanonicalQuad::Kind::GeneralST;
      c.s = st.x();
    }
    return c;
  }
  throw UnsupportedShapeError("no labeling reaches a canonical form");
}

//! The open segment joining the midpoints of the two diagonals.
struct SegmentZ
{
  Point m1; //!< midpoint of the diagonal through vertices 0 and 2
  Point m2; //!< midpoint of the diagonal through vertices 1 and 3

  bool degenerate(double scale = 1) const { return (m2 - m1).norm() <= 1e-12 * scale; }

  //! Euclidean distance to the closed segment.
  double distance(const Point& x) const
  {
    const Point d = m2 - m1;
    const double len2 = d.squaredNorm();
    if (len2 == 0)
      return (x - m1).norm();
    const double s = std::clamp((x - m1).dot(d) / len2, 0.0, 1.0);
    return (x - (m1 + s * d)).norm();
  }

  //! Distance to the supporting line.
  double line_distance(const Point& x) const
  {
    const Point d = m2 - m1;
    return std::abs(cross(d, x - m1)) / d.norm();
  }

  //! Position along the segment, 0 at m1 and 1 at m2.
  double position(const Point& x) const
  {
    const Point d = m2 - m1;
    return (x - m1).dot(d) / d.squaredNorm();
  }

  //! True when x lies on the segment strictly between its endpoints.
  bool interior(const Point& x, double tol = 1e-9) const
  {
    if (line_distance(x) > tol * std::max(1.0, (m2 - m1).norm()))
      return false;
    const double s = position(x);
    return s > tol && s < 1 - tol;
  }
};

inline SegmentZ diagonal_segment(const ConvexQuadrilateral& quad)
{
  return {0.5 * (quad[0] + quad[2]), 0.5 * (quad[1] + quad[3])};
}

//! Concyclicity via the incircle determinant on coordinates centered at the
//! centroid and scaled to unit diameter.
inline bool is_cyclic(const ConvexQuadrilateral& quad, double tol = 1e-9)
{
  const Point c = quad.centroid();
  const double scale = quad.diameter();
  Eigen::Matrix4d m;
  for (int i = 0; i < 4; ++i) {
    const Point p = (quad[i] - c) / scale;
    m(i, 0) = p.squaredNorm();
    m(i, 1) = p.x();
    m(i, 2) = p.y();
    m(i, 3) = 1;
  }
  return std::abs(m.determinant()) <= tol;
}

//! Pitot test: opposite sides have equal sums.
inline bool is_tangential(const ConvexQuadrilateral& quad, double tol = 1e-9)
{
  const double d = quad.edge(0).norm() + quad.edge(2).norm() - quad.edge(1).norm() -
                   quad.edge(3).norm();
  return std::abs(d) <= tol * quad.perimeter();
}

//! Circle through the vertices of a cyclic quadrilateral (from vertices 0, 1, 2).
inline EllipseGeometry circumcircle(const ConvexQuadrilateral& quad)
{
  const Point a = quad[0], b = quad[1], c = quad[2];
  const double d = 2 * cross(b - a, c - a);
  const Point ab = b - a, ac = c - a;
  const Point off((ac.y() * ab.squaredNorm() - ab.y() * ac.squaredNorm()) / d,
                  (ab.x() * ac.squaredNorm() - ac.x() * ab.squaredNorm()) / d);
  EllipseGeometry g;
  g.center = a + off;
  g.a = g.b = off.norm();
  return g;
}

//! Circle tangent to the four side lines of a tangential quadrilateral.
inline EllipseGeometry incircle(const ConvexQuadrilateral& quad)
{
  // Unit inward normals n_i; the center x and radius ρ solve n_i·(x − v_i) = ρ.
  Eigen::Matrix<double, 4, 3> m;
  Eigen::Vector4d rhs;
  for (int i = 0; i < 4; ++i) {
    const Point e = quad.edge(i).normalized();
    const Point n(-e.y(), e.x());
    m(i, 0) = n.x();
    m(i, 1) = n.y();
    m(i, 2) = -1;
    rhs(i) = n.dot(quad[i]);
  }
  const Eigen::Vector3d sol = m.colPivHouseholderQr().solve(rhs);
  EllipseGeometry g;
  g.center = sol.head<2>();
  g.a = g.b = sol(2);
  return g;
}

//! Right-angle configuration: O at the origin, P = (p,0) and Q = (0,q) on the
//! axes, and the lines QR and PR meeting the axes at H = (h,0) and K = (0,k).
struct SteinerFrame
{
  double h = 0, k = 0, p = 0, q = 0;
  AffineMap to_frame; //!< rigid map from original coordinates
  VertexRoles roles;
};

//! Frame from its four parameters; requires 0 < p < h and 0 < q < k.
inline SteinerFrame make_frame(double h, double k, double p, double q)
{
  if (!(p > 0 && q > 0 && h > p && k > q) || !std::isfinite(h) || !std::isfinite(k))
    throw InputError("frame requires 0 < p < h and 0 < q < k");
  return {h, k, p, q, AffineMap::identity(), VertexRoles{}};
}

//! Fourth vertex R = QH ∩ PK of a frame, in frame coordinates.
inline Point frame_apex(const SteinerFrame& f)
{
  // x/h + y/q = 1 and x/p + y/k = 1.
  Eigen::Matrix2d m;
  m << 1 / f.h, 1 / f.q, 1 / f.p, 1 / f.k;
  return m.inverse() * Eigen::Vector2d(1, 1);
}

//! The quadrilateral O P R Q of a frame, in frame coordinates.
inline ConvexQuadrilateral frame_quad(const SteinerFrame& f)
{
  return validate({Point(0, 0), Point(f.p, 0), frame_apex(f), Point(0, f.q)});
}

namespace detail {

inline std::optional<SteinerFrame> frame_at(const ConvexQuadrilateral& quad, int i, double angle_tol)
{
  const VertexRoles r = rotation_roles(i);
  const Point O = quad[r.O];
  const Point op = quad[r.P] - O;
  const Point oq = quad[r.Q] - O;
  const double angle = std::atan2(std::abs(cross(op, oq)), op.dot(oq));
  if (std::abs(angle - std::numbers::pi / 2) > angle_tol)
    return std::nullopt;
  const Point e1 = op.normalized();
  const Point e2(-e1.y(), e1.x());
  Eigen::Matrix2d rot;
  rot.row(0) = e1.transpose();
  rot.row(1) = e2.transpose();
  const AffineMap to_frame(rot, -rot * O);
  const double p = op.norm();
  const double q = oq.dot(e2);
  const Point R = to_frame(quad[r.R]);
  if (R.y() == q || R.x() == p)
    return std::nullopt;
  const double h = R.x() * q / (q - R.y());
  const double k = R.y() * p / (p - R.x());
  if (!(h > p && k > q && p > 0 && q > 0))
    return std::nullopt;
  return SteinerFrame{h, k, p, q, to_frame, r};
}

} // namespace detail

//! Frame at the first vertex whose interior angle is a right angle within
//! `angle_tol` radians and whose opposite vertex lies inside the rectangle
//! spanned by the two adjacent sides (so that H and K fall beyond P and Q).
inline std::optional<SteinerFrame> try_steiner_frame(const ConvexQuadrilateral& quad,
                                                     double angle_tol = 1e-9)
{
  if (quad.shape != QuadShape::General)
    return std::nullopt;
  for (int i = 0; i < 4; ++i)
    if (auto f = detail::frame_at(quad, i, angle_tol))
      return f;
  return std::nullopt;
}

inline SteinerFrame steiner_frame(const ConvexQuadrilateral& quad, double angle_tol = 1e-9)
{
  if (quad.shape != QuadShape::General)
    throw UnsupportedShapeError("frame requires a quadrilateral with no parallel sides");
  if (auto f = try_steiner_frame(quad, angle_tol))
    return *f;
  throw FrameUnavailableError("no right-angle vertex with a valid frame");
}

//! Isometry onto the right trapezoid (0,0), (1,0), (1,t), (0,1).
struct RightTrapezoidMatch
{
  double t = 0;
  AffineMap to_canonical;
};

//! Checks congruence with the canonical right trapezoid over all eight
//! labelings (rotations and reflections).
inline std::optional<RightTrapezoidMatch> match_right_trapezoid(const ConvexQuadrilateral& quad,
                                                                double tol = 1e-9)
{
  if (quad.shape != QuadShape::Trapezoid)
    return std::nullopt;
  for (int dir : {1, -1}) {
    for (int i = 0; i < 4; ++i) {
      const Point O = quad[i];
      const Point P = quad[i + dir];
      const Point R = quad[i + 2 * dir];
      const Point Q = quad[i - dir];
      const Point e1 = P - O;
      const Point e2 = Q - O;
      if (std::abs(e1.norm() - 1) > tol || std::abs(e2.norm() - 1) > tol ||
          std::abs(e1.dot(e2)) > tol)
        continue;
      const double t = (R - P).dot(e2);
      if ((R - P - t * e2).norm() > tol || t <= 0 || std::abs(t - 1) <= tol)
        continue;
      const Point u1 = e1.normalized();
      const Point u2 = Point(-u1.y(), u1.x()) * (cross(e1, e2) > 0 ? 1.0 : -1.0);
      Eigen::Matrix2d rot;
      rot.row(0) = u1.transpose();
      rot.row(1) = u2.transpose();
      return RightTrapezoidMatch{t, AffineMap(rot, -rot * O)};
    }
  }
  return std::nullopt;
}

} // namespace quadell
