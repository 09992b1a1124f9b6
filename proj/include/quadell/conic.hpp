#pragma once

//! @file
//! Conic algebra in the convention A x² + B y² + 2C xy + D x + E y + F = 0.

#include <quadell/errors.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <string_view>

namespace quadell {

using Point = Eigen::Vector2d;

//! Coefficients of A x² + B y² + 2C xy + D x + E y + F = 0.
//!
//! A conic is an equivalence class under nonzero scaling; compare with
//! `same_up_to_scale`, never with coefficient-wise equality.
struct Conic
{
  double A = 0, B = 0, C = 0, D = 0, E = 0, F = 0;

  double operator()(const Point& p) const
  {
    const double x = p.x(), y = p.y();
    return A * x * x + B * y * y + 2 * C * x * y + D * x + E * y + F;
  }

  //! Symmetric homogeneous matrix [[A, C, D/2], [C, B, E/2], [D/2, E/2, F]].
  Eigen::Matrix3d matrix() const
  {
    Eigen::Matrix3d m;
    m << A, C, D / 2, C, B, E / 2, D / 2, E / 2, F;
    return m;
  }

  static Conic from_matrix(const Eigen::Matrix3d& m)
  {
    // Symmetrize so that round-off in either triangle is averaged.
    return {m(0, 0),
            m(1, 1),
            0.5 * (m(0, 1) + m(1, 0)),
            m(0, 2) + m(2, 0),
            m(1, 2) + m(2, 1),
            m(2, 2)};
  }

  Conic scaled(double k) const { return {k * A, k * B, k * C, k * D, k * E, k * F}; }

  double max_abs() const
  {
    return std::max({std::abs(A), std::abs(B), std::abs(C), std::abs(D),
                      std::abs(E), std::abs(F)});
  }

  bool is_finite() const
  {
    return std::isfinite(A) && std::isfinite(B) && std::isfinite(C) &&
           std::isfinite(D) && std::isfinite(E) && std::isfinite(F);
  }

  //! Scaled so that the largest coefficient has magnitude 1 and the
  //! quadratic part has nonnegative trace (A > 0 for ellipses).
  Conic normalized() const
  {
    const double m = max_abs();
    if (m == 0)
      return *this;
    double k = 1 / m;
    if (A + B < 0 || (A + B == 0 && (A < 0 || (A == 0 && C < 0))))
      k = -k;
    return scaled(k);
  }
};

//! True when the two coefficient vectors are parallel to within `tol`
//! after normalization.
inline bool same_up_to_scale(const Conic& a, const Conic& b, double tol = 1e-10)
{
  const Conic na = a.normalized();
  const Conic nb = b.normalized();
  const double d = std::max({std::abs(na.A - nb.A), std::abs(na.B - nb.B),
                             std::abs(na.C - nb.C), std::abs(na.D - nb.D),
                             std::abs(na.E - nb.E), std::abs(na.F - nb.F)});
  return d <= tol;
}

//! AB − C², the determinant of the quadratic part.
inline double quadratic_det(const Conic& c) { return c.A * c.B - c.C * c.C; }

//! AE² + BD² + 4FC² − 2CDE − 4ABF, which equals −4 det(matrix()).
inline double nondegeneracy(const Conic& c)
{
  return c.A * c.E * c.E + c.B * c.D * c.D + 4 * c.F * c.C * c.C -
         2 * c.C * c.D * c.E - 4 * c.A * c.B * c.F;
}

enum class ConicClass
{
  Ellipse,
  Parabola,
  Hyperbola,
  DegeneratePoint,
  DegenerateLines,
  Empty
};

inline std::string_view to_string(ConicClass c)
{
  switch (c) {
  case ConicClass::Ellipse: return "ellipse";
  case ConicClass::Parabola: return "parabola";
  case ConicClass::Hyperbola: return "hyperbola";
  case ConicClass::DegeneratePoint: return "degenerate_point";
  case ConicClass::DegenerateLines: return "degenerate_lines";
  case ConicClass::Empty: return "empty";
  }
  return "unknown";
}

//! Raised when an ellipse-only operation receives another conic type.
class ClassificationError : public Error
{
public:
  explicit ClassificationError(ConicClass tag)
    : Error("conic is not a real ellipse (" + std::string(to_string(tag)) + ")")
    , tag_(tag)
  {
  }

  ConicClass tag() const { return tag_; }

private:
  ConicClass tag_;
};

namespace detail {

inline constexpr double classify_tol = 1e-12;

inline void require_finite(const Conic& c)
{
  if (!c.is_finite())
    throw InputError("conic coefficients must be finite");
  if (c.A == 0 && c.B == 0 && c.C == 0)
    throw InputError("conic has no quadratic part");
}

//! Center from the gradient system; J = AB − C² must be nonzero.
inline Point center_of(const Conic& c, double J)
{
  return {-0.5 * (c.B * c.D - c.C * c.E) / J, 0.5 * (c.C * c.D - c.A * c.E) / J};
}

} // namespace detail

//! Classifies the real locus of the conic.
//!
//! Coefficients are scaled by the largest quadratic coefficient. The
//! quadratic part is parabolic when |AB − C²| is below 1e−12 of that scale.
//! Otherwise the nondegeneracy quantity is judged against the magnitude of
//! the terms that make up the value of the conic at its center, which keeps
//! the test invariant under translation.
inline ConicClass classify(const Conic& conic)
{
  detail::require_finite(conic);
  const double qs = std::max({std::abs(conic.A), std::abs(conic.B), std::abs(conic.C)});
  Conic c = conic.scaled(1 / qs);
  if (c.A + c.B < 0)
    c = c.scaled(-1);

  const double J = quadratic_det(c);
  const double delta = nondegeneracy(c);
  constexpr double tol = detail::classify_tol;

  if (std::abs(J) > tol) {
    // delta = -4 J Fc, with Fc the value of the conic at its center.
    const Point ctr = detail::center_of(c, J);
    const double fc_scale =
      std::abs(c.F) + 0.5 * (std::abs(c.D * ctr.x()) + std::abs(c.E * ctr.y()));
    const bool degenerate = std::abs(delta) <= tol * 4 * std::abs(J) * fc_scale;
    if (J > 0) {
      if (degenerate)
        return ConicClass::DegeneratePoint;
      return delta > 0 ? ConicClass::Ellipse : ConicClass::Empty;
    }
    return degenerate ? ConicClass::DegenerateLines : ConicClass::Hyperbola;
  }

  const double delta_scale = std::abs(c.A) * c.E * c.E + std::abs(c.B) * c.D * c.D +
                             2 * std::abs(c.C * c.D * c.E) +
                             4 * std::abs(c.F) * (c.C * c.C + std::abs(c.A * c.B));
  if (std::abs(delta) > tol * std::max(delta_scale, 1.0))
    return ConicClass::Parabola;

  // Parallel line pair: real, coincident, or imaginary.
  const double K = c.A * c.F - c.D * c.D / 4 + c.B * c.F - c.E * c.E / 4;
  const double k_scale = std::abs(c.A * c.F) + c.D * c.D / 4 + std::abs(c.B * c.F) +
                         c.E * c.E / 4;
  if (K > tol * std::max(k_scale, 1.0))
    return ConicClass::Empty;
  return ConicClass::DegenerateLines;
}

//! Center, semi-axes a ≥ b, major-axis angle phi in [0, π), eccentricity.
struct EllipseGeometry
{
  Point center = Point::Zero();
  double a = 1;
  double b = 1;
  double phi = 0;
  double ecc = 0;
};

//! Eccentricity from the quadratic part alone: e² = 2ρ/(|S| + ρ) with
//! S = A + B and ρ = √((A − B)² + 4C²). Accurate near circles.
inline double eccentricity_of_quadratic(double A, double B, double C)
{
  const double S = std::abs(A + B);
  const double root = std::hypot(A - B, 2 * C);
  if (S + root == 0)
    return 0;
  return std::sqrt(std::min(1.0, 2 * root / (S + root)));
}

//! Closed-form extraction of the ellipse's center, axes and orientation.
//!
//! a² = Δ / (2J((A+B) − ρ)), b² = Δ / (2J((A+B) + ρ)) with J = AB − C²,
//! Δ = AE² + BD² + 4FC² − 2CDE − 4ABF, ρ = √((B−A)² + 4C²). The factor
//! (A+B) − ρ is evaluated as 4J / ((A+B) + ρ) to avoid cancellation.
//!
//! The rotation of the axes is φ = ½ arccot((A−B)/(2C)) (φ = 0 when C = 0).
//! That angle names one of the two principal directions; the quadratic form
//! along it is compared with the two radicand branches to decide whether it
//! carries the major or the minor axis. The returned `phi` is the major-axis
//! angle reduced to [0, π); circles report 0.
inline EllipseGeometry ellipse_geometry(const Conic& conic)
{
  const ConicClass tag = classify(conic);
  if (tag != ConicClass::Ellipse)
    throw ClassificationError(tag);

  const Conic c = conic.normalized();
  const double J = quadratic_det(c);
  const double delta = nondegeneracy(c);
  const double S = c.A + c.B;
  const double root = std::hypot(c.B - c.A, 2 * c.C);
  const double minus = 4 * J / (S + root);

  EllipseGeometry g;
  g.a = std::sqrt(delta / (2 * J * minus));
  g.b = std::sqrt(delta / (2 * J * (S + root)));
  g.center = detail::center_of(c, J);
  g.ecc = eccentricity_of_quadratic(c.A, c.B, c.C);

  if (root <= 1e-14 * S) {
    g.phi = 0;
    g.b = g.a = std::sqrt(g.a * g.b);
    g.ecc = 0;
    return g;
  }

  double axis = 0;
  if (c.C != 0) {
    // arccot in (0, π), written through atan2 to stay finite as C → 0.
    double twice = std::atan2(2 * c.C, c.A - c.B);
    if (twice < 0)
      twice += std::numbers::pi;
    axis = 0.5 * twice;
  }
  const double cs = std::cos(axis), sn = std::sin(axis);
  const double along = c.A * cs * cs + 2 * c.C * cs * sn + c.B * sn * sn;
  const double lambda_major = 0.5 * minus;
  const double lambda_minor = 0.5 * (S + root);
  double phi = std::abs(along - lambda_major) <= std::abs(along - lambda_minor)
                 ? axis
                 : axis + std::numbers::pi / 2;
  phi = std::fmod(phi, std::numbers::pi);
  if (phi < 0)
    phi += std::numbers::pi;
  g.phi = phi;
  return g;
}

//! Inverse of `ellipse_geometry`: the conic whose zero set is the ellipse.
inline Conic conic_from_geometry(const EllipseGeometry& g)
{
  const double cs = std::cos(g.phi), sn = std::sin(g.phi);
  const double ia = 1 / (g.a * g.a), ib = 1 / (g.b * g.b);
  const double A = cs * cs * ia + sn * sn * ib;
  const double B = sn * sn * ia + cs * cs * ib;
  const double C = cs * sn * (ia - ib);
  const double x0 = g.center.x(), y0 = g.center.y();
  return {A,
          B,
          C,
          -2 * (A * x0 + C * y0),
          -2 * (B * y0 + C * x0),
          A * x0 * x0 + B * y0 * y0 + 2 * C * x0 * y0 - 1};
}

inline double area(const EllipseGeometry& g) { return std::numbers::pi * g.a * g.b; }

//! x ↦ linear · x + translation, with cached nonzero determinant.
class AffineMap
{
public:
  AffineMap()
    : AffineMap(Eigen::Matrix2d::Identity(), Eigen::Vector2d::Zero())
  {
  }

  AffineMap(const Eigen::Matrix2d& linear, const Eigen::Vector2d& translation)
    : linear_(linear)
    , translation_(translation)
    , det_(linear.determinant())
  {
    if (!linear_.allFinite() || !translation_.allFinite())
      throw InputError("affine map must be finite");
    const double scale = linear_.cwiseAbs().maxCoeff();
    if (scale == 0 || std::abs(det_) <= 1e-14 * scale * scale)
      throw InputError("affine map is singular");
  }

  static AffineMap identity() { return {}; }

  static AffineMap translation(const Eigen::Vector2d& t)
  {
    return {Eigen::Matrix2d::Identity(), t};
  }

  static AffineMap scaling(double sx, double sy)
  {
    return {Eigen::Vector2d(sx, sy).asDiagonal(), Eigen::Vector2d::Zero()};
  }

  static AffineMap rotation(double angle)
  {
    Eigen::Matrix2d r;
    r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
    return {r, Eigen::Vector2d::Zero()};
  }

  const Eigen::Matrix2d& linear() const { return linear_; }
  const Eigen::Vector2d& translation() const { return translation_; }
  double det() const { return det_; }

  Point operator()(const Point& p) const { return linear_ * p + translation_; }

  AffineMap inverse() const
  {
    const Eigen::Matrix2d inv = linear_.inverse();
    return {inv, -inv * translation_};
  }

  //! Homogeneous 3×3 form [[L, t], [0, 1]].
  Eigen::Matrix3d homogeneous() const
  {
    Eigen::Matrix3d h = Eigen::Matrix3d::Identity();
    h.topLeftCorner<2, 2>() = linear_;
    h.topRightCorner<2, 1>() = translation_;
    return h;
  }

private:
  Eigen::Matrix2d linear_;
  Eigen::Vector2d translation_;
  double det_;
};

//! The map x ↦ outer(inner(x)).
inline AffineMap compose(const AffineMap& outer, const AffineMap& inner)
{
  return {outer.linear() * inner.linear(),
          outer.linear() * inner.translation() + outer.translation()};
}

//! The conic whose zero set is the image of `conic`'s zero set under `map`.
inline Conic transform_conic(const Conic& conic, const AffineMap& map)
{
  detail::require_finite(conic);
  const Eigen::Matrix3d hinv = map.inverse().homogeneous();
  return Conic::from_matrix(hinv.transpose() * conic.matrix() * hinv);
}

//! Slope of the diameter conjugate to the diameter of slope `m`.
//!
//! Slopes are extended reals: ±infinity both denote the vertical direction,
//! and a vertical result is reported as +infinity. Solves
//! A + C(m + m′) + B m m′ = 0 projectively on direction vectors.
inline double conjugate_slope(const Conic& conic, double m)
{
  const double dx = std::isinf(m) ? 0.0 : 1.0;
  const double dy = std::isinf(m) ? 1.0 : m;
  const double qx = conic.A * dx + conic.C * dy;
  const double qy = conic.C * dx + conic.B * dy;
  // The conjugate direction is orthogonal to Q d.
  const double ex = -qy, ey = qx;
  if (ex == 0)
    return std::numeric_limits<double>::infinity();
  return ey / ex;
}

} // namespace quadell
