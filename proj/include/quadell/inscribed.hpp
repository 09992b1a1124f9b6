#pragma once

//! @file
//! Ellipses inscribed in a convex quadrilateral.
//!
//! Inscribed conics form a pencil in the dual plane spanned by the two
//! degenerate duals "lines through v0 or v2" and "lines through v1 or v3".
//! Every side line passes through one point of each pair, so it is tangent
//! to every member; the center moves linearly along the segment joining the
//! diagonal midpoints.

#include <quadell/conic.hpp>
#include <quadell/errors.hpp>
#include <quadell/extremal.hpp>
#include <quadell/minimize.hpp>
#include <quadell/pencil.hpp>
#include <quadell/polynomial.hpp>
#include <quadell/quad.hpp>

#include <cmath>
#include <optional>

namespace quadell {

//! Dual conic X Yᵀ + Y Xᵀ of the point pair {X, Y}: the lines through X or Y.
inline Eigen::Matrix3d point_pair_dual(const Point& x, const Point& y)
{
  const Eigen::Vector3d X(x.x(), x.y(), 1), Y(y.x(), y.y(), 1);
  return X * Y.transpose() + Y * X.transpose();
}

//! Adjugate of a 3×3 matrix.
inline Eigen::Matrix3d adjugate(const Eigen::Matrix3d& m)
{
  Eigen::Matrix3d a;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
      const int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      a(i, j) = m(r0, c0) * m(r1, c1) - m(r0, c1) * m(r1, c0);
    }
  return a;
}

//! The tangent pencil with parameter λ in (0,1):
//! dual(λ) = (1 − λ)·D02 + λ·D13, primal = adj(dual(λ)).
class InscribedPencil
{
public:
  explicit InscribedPencil(const ConvexQuadrilateral& quad)
    : quad_(quad)
  {
    if (quad.shape == QuadShape::Parallelogram)
      throw UnsupportedShapeError("parallelograms have a single inscribed center");
    // Work around the centroid at unit scale for conditioning.
    const Point c = quad.centroid();
    const double sc = quad.diameter();
    to_local_ = AffineMap(Eigen::Matrix2d::Identity() / sc, -c / sc);
    d02_ = point_pair_dual(to_local_(quad[0]), to_local_(quad[2]));
    d13_ = point_pair_dual(to_local_(quad[1]), to_local_(quad[3]));
    const Eigen::Matrix3d diff = d13_ - d02_;
    p0_ = adjugate(d02_);
    p2_ = adjugate(diff);
    p1_ = adjugate(d02_ + diff) - p0_ - p2_;
  }

  const ConvexQuadrilateral& quad() const { return quad_; }

  SegmentZ segment() const { return diagonal_segment(quad_); }

  //! Center of the member: (1 − λ)·m02 + λ·m13.
  Point center(double lambda) const
  {
    const SegmentZ z = segment();
    return (1 - lambda) * z.m1 + lambda * z.m2;
  }

  //! Primal member in the local (centroid, unit-diameter) coordinates.
  Conic local_member(double lambda) const
  {
    return Conic::from_matrix(p0_ + lambda * p1_ + lambda * lambda * p2_);
  }

  Conic local_member_derivative(double lambda) const
  {
    return Conic::from_matrix(p1_ + 2 * lambda * p2_);
  }

  Conic member(double lambda) const
  {
    if (!(lambda > 1e-12 && lambda < 1 - 1e-12) || !std::isfinite(lambda))
      throw DomainError("inscribed pencil parameter must lie in (0, 1)", 0, 1);
    return transform_conic(local_member(lambda), to_local_.inverse()).normalized();
  }

  //! Parameter whose member is centered at the projection of `x` onto Z.
  double parameter_of_center(const Point& x) const { return segment().position(x); }

private:
  ConvexQuadrilateral quad_;
  AffineMap to_local_;
  Eigen::Matrix3d d02_, d13_, p0_, p1_, p2_;
};

inline Conic inscribed_member(const ConvexQuadrilateral& quad, double lambda)
{
  return InscribedPencil(quad).member(lambda);
}

inline Point inscribed_center(const ConvexQuadrilateral& quad, double lambda)
{
  if (!(lambda > 0 && lambda < 1))
    throw DomainError("inscribed pencil parameter must lie in (0, 1)", 0, 1);
  return InscribedPencil(quad).center(lambda);
}

//! Discriminant of the restriction of `conic` to the line through a and b,
//! scaled to be dimensionless; zero for a tangent line.
inline double tangency_residual(const Conic& conic, const Point& a, const Point& b)
{
  const Conic c = conic.normalized();
  const Point d = b - a;
  // conic(a + s d) = q2 s² + q1 s + q0
  const double q2 = c.A * d.x() * d.x() + 2 * c.C * d.x() * d.y() + c.B * d.y() * d.y();
  const double q1 = 2 * (c.A * a.x() * d.x() + c.C * (a.x() * d.y() + a.y() * d.x()) +
                         c.B * a.y() * d.y()) +
                    c.D * d.x() + c.E * d.y();
  const double q0 = c(a);
  return (q1 * q1 - 4 * q2 * q0) / (q1 * q1 + 4 * std::abs(q2 * q0) + 1e-300);
}

//! Coefficients of c(k) = 16k³ − 12(t+1)k² + 4(2t−1)k + t + 1 for the right
//! trapezoid (0,0),(1,0),(1,t),(0,1); its root in the open interval between
//! ½ and t/2 is the center height of the least eccentric inscribed ellipse.
inline Polynomial trapezoid_inscribed_cubic(double t)
{
  return Polynomial{t + 1, 4 * (2 * t - 1), -12 * (t + 1), 16};
}

//! E(k) = (2k−1)(2k−t) / (16(t−1)²k⁴ + (8+8t²+48t)k² − 32t(1+t)k + 17t² − 2t + 1).
inline double trapezoid_inscribed_E(double t, double k)
{
  const double den = 16 * (t - 1) * (t - 1) * k * k * k * k + (8 + 8 * t * t + 48 * t) * k * k -
                     32 * t * (1 + t) * k + 17 * t * t - 2 * t + 1;
  return (2 * k - 1) * (2 * k - t) / den;
}

//! Squared eccentricity of the inscribed ellipse centered at (½, k):
//! 2 / (1 + √(1 − 16 t E(k))).
inline double trapezoid_inscribed_ecc_sq(double t, double k)
{
  return 2 / (1 + std::sqrt(1 - 16 * t * trapezoid_inscribed_E(t, k)));
}

//! The variant 2 / (1 + √(1 − 16 t (1−t)² E(k))). It is not the
//! eccentricity of the inscribed ellipse; it is kept because the trapezoid
//! bielliptic polynomial system is built on it.
inline double trapezoid_inscribed_ecc_sq_variant(double t, double k)
{
  return 2 / (1 + std::sqrt(1 - 16 * t * (1 - t) * (1 - t) * trapezoid_inscribed_E(t, k)));
}

struct InscribedSolutionTrapezoid
{
  double t = 0;
  double k0 = 0;
  double Ek = 0;
  double ecc_sq = 0;         //!< squared minimal eccentricity
  double ecc_sq_variant = 0; //!< variant formula at the same k0
  double residual = 0;       //!< |c(k0)|
  int sign_changes = 0;      //!< sign changes of c on a scan of the interval
};

inline InscribedSolutionTrapezoid solve_trapezoid_inscribed(double t)
{
  if (!(t > 0) || std::abs(t - 1) < 1e-7 || !std::isfinite(t))
    throw DomainError("trapezoid inscribed solve requires t > 0 and |t - 1| >= 1e-7", 0, 1);
  const Polynomial c = trapezoid_inscribed_cubic(t);
  const double lo = std::min(0.5, t / 2), hi = std::max(0.5, t / 2);
  InscribedSolutionTrapezoid s;
  s.t = t;
  constexpr int n = 1000;
  double prev = c.eval_compensated(lo);
  for (int i = 1; i <= n; ++i) {
    const double v = c.eval_compensated(lo + (hi - lo) * i / n);
    if ((prev > 0) != (v > 0))
      ++s.sign_changes;
    prev = v;
  }
  s.k0 = newton_polish(c, bisect([&](double k) { return c.eval_compensated(k); }, lo, hi), lo, hi);
  s.residual = std::abs(c.eval_compensated(s.k0));
  s.Ek = trapezoid_inscribed_E(t, s.k0);
  s.ecc_sq = trapezoid_inscribed_ecc_sq(t, s.k0);
  s.ecc_sq_variant = trapezoid_inscribed_ecc_sq_variant(t, s.k0);
  return s;
}

//! Numeric minimization of eccentricity over the tangent pencil.
inline ExtremalEllipse min_ecc_inscribed_numeric(const ConvexQuadrilateral& quad,
                                                 const MinimizeOptions& opts = {})
{
  const InscribedPencil pencil(quad);
  const auto f = [&](double l) { return ecc_psi(pencil.local_member(l)); };
  const auto df = [&](double l) {
    return ecc_psi_derivative(pencil.local_member(l), pencil.local_member_derivative(l));
  };
  const MinimizeResult m = minimize_on_interval(f, df, 0.0, 1.0, opts);
  ExtremalEllipse e;
  e.conic = pencil.member(m.x);
  e.geometry = detail::extract(e.conic);
  e.area = area(e.geometry);
  e.diagnostics.path = SolvePath::Numeric;
  e.diagnostics.method = "tangent_pencil_scan_golden";
  e.diagnostics.parameter = m.x;
  e.diagnostics.iterations = m.iterations;
  double worst = 0;
  for (int i = 0; i < 4; ++i)
    worst = std::max(worst, std::abs(tangency_residual(e.conic, quad[i], quad[i + 1])));
  e.diagnostics.residuals["tangency"] = worst;
  e.diagnostics.residuals["bracket_width"] = m.bracket_hi - m.bracket_lo;
  return e;
}

//! Inscribed ellipse of minimal eccentricity.
//!
//! Tangential inputs give the incircle; the congruent right trapezoid uses the
//! root of c(k); everything else is minimized over the tangent pencil.
inline ExtremalEllipse min_ecc_inscribed(const ConvexQuadrilateral& quad)
{
  if (quad.shape == QuadShape::Parallelogram)
    throw UnsupportedShapeError("minimal inscribed eccentricity is not covered for parallelograms");

  if (is_tangential(quad)) {
    ExtremalEllipse e = detail::circle_result(incircle(quad), "incircle");
    double worst = 0;
    for (int i = 0; i < 4; ++i)
      worst = std::max(worst, std::abs(tangency_residual(e.conic, quad[i], quad[i + 1])));
    e.diagnostics.residuals["tangency"] = worst;
    return e;
  }

  if (const auto match = match_right_trapezoid(quad)) {
    const double t = match->t;
    const InscribedSolutionTrapezoid sol = solve_trapezoid_inscribed(t);
    const ConvexQuadrilateral canon = canonical_trapezoid(t);
    const double lambda = (t - 2 * sol.k0) / (t - 1);
    ExtremalEllipse e;
    e.conic =
      transform_conic(InscribedPencil(canon).member(lambda), match->to_canonical.inverse()).normalized();
    e.geometry = detail::extract(e.conic);
    e.area = area(e.geometry);
    e.diagnostics.path = SolvePath::ClosedForm;
    e.diagnostics.method = "right_trapezoid";
    e.diagnostics.parameter = sol.k0;
    e.diagnostics.residuals["cubic"] = sol.residual;
    e.diagnostics.residuals["ecc_sq"] = std::abs(e.geometry.ecc * e.geometry.ecc - sol.ecc_sq);
    return e;
  }

  return min_ecc_inscribed_numeric(quad);
}

//! Where a circumscribed member's center sits relative to the segment Z.
struct CenterSeparation
{
  double distance = 0; //!< to the closed segment
  bool interior = false;
  Point center = Point::Zero();
};

//! Center of the canonical (or trapezoid) pencil member with parameter `u`,
//! mapped back to the original coordinates and compared with Z. An ellipse
//! through the vertices never shares its center with an inscribed ellipse,
//! so `interior` is false for every admissible u.
inline CenterSeparation inscribed_center_separation(const ConvexQuadrilateral& quad, double u)
{
  const CanonicalQuad canon = canonicalize(quad);
  const Pencil pencil = canon.kind == CanonicalQuad::Kind::GeneralST
                          ? Pencil::canonical(canon.s, canon.t)
                          : Pencil::trapezoid(canon.t);
  const Point local = pencil.member_center(u);
  CenterSeparation sep;
  sep.center = canon.to_canonical.inverse()(local);
  const SegmentZ z = diagonal_segment(quad);
  sep.distance = z.distance(sep.center);
  sep.interior = z.interior(sep.center, 1e-12);
  return sep;
}

} // namespace quadell
