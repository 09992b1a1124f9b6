#pragma once

//! @file
//! Circumscribed ellipse of minimal eccentricity, and the conjugate
//! directions shared by every ellipse through the four vertices.

#include <quadell/conic.hpp>
#include <quadell/errors.hpp>
#include <quadell/extremal.hpp>
#include <quadell/minimize.hpp>
#include <quadell/pencil.hpp>
#include <quadell/quad.hpp>

#include <cmath>
#include <numbers>
#include <utility>

namespace quadell {

//! b²/a² of the frame pencil member with parameter v:
//! g(v) / ((kv + h) + √((kv − h)² + (vp + q)²))².
inline double frame_axis_ratio_sq(const SteinerFrame& f, double v)
{
  const FramePencilData d{f.h, f.k, f.p, f.q};
  const Interval iv = d.interval();
  if (!iv.contains(v))
    throw DomainError("frame parameter outside the ellipse interval", iv.lo, iv.hi);
  const double den = (f.k * v + f.h) + std::hypot(f.k * v - f.h, v * f.p + f.q);
  return d.g(v) / (den * den);
}

struct SteinerSolution
{
  double v0 = 0;       //!< optimal frame parameter
  double W = 0;        //!< 4k²h² + (hp − qk)²
  double r = 0;        //!< √(hk)·√(hk − pq)
  double sum = 0;      //!< hp + kq
  double diff = 0;     //!< hp − kq
  double ratio_ba = 0; //!< b/a at the optimum
  double cot_phi = 0;  //!< cotangent of the minor-axis angle at the optimum
  double g_v0 = 0;     //!< g(v0) = 4kh(kh − pq)W / (2k²h − kpq + hp²)²
};

inline SteinerSolution min_ecc_frame_solution(const SteinerFrame& f)
{
  const double h = f.h, k = f.k, p = f.p, q = f.q;
  SteinerSolution s;
  const double den = 2 * k * k * h - k * p * q + h * p * p;
  s.v0 = (q * q * k + 2 * k * h * h - h * p * q) / den;
  s.W = 4 * k * k * h * h + (h * p - q * k) * (h * p - q * k);
  s.r = std::sqrt(h * k) * std::sqrt(h * k - p * q);
  s.sum = h * p + k * q;
  s.diff = h * p - k * q;
  const double sw = std::sqrt(s.W);
  s.ratio_ba = 2 * s.r / (sw + s.sum);
  s.cot_phi = (k * q - h * p + sw) / (2 * k * h);
  s.g_v0 = 4 * k * h * (k * h - p * q) * s.W / (den * den);
  return s;
}

struct ConjugateDirections
{
  double M1 = 0;
  double M2 = 0;
};

//! The conjugate pair common to every conic of the frame pencil:
//! −k/p ± r/(hp) with r = √(hk)·√(hk − pq).
inline ConjugateDirections common_conjugate_directions(const SteinerFrame& f)
{
  const double r = std::sqrt(f.h * f.k) * std::sqrt(f.h * f.k - f.p * f.q);
  return {-f.k / f.p + r / (f.h * f.p), -f.k / f.p - r / (f.h * f.p)};
}

//! Slopes of the equal conjugate diameters of `geom`, which must be given in
//! frame coordinates. With θ = atan(b/a) they lie at the major-axis angle ±θ;
//! the minor axis sits at phi + π/2, so these are tan(φ_minor ± θ − π/2).
inline std::pair<double, double> equal_conjugate_directions(const SteinerSolution& sol,
                                                            const EllipseGeometry& geom)
{
  const double theta = std::atan(sol.ratio_ba);
  return {std::tan(geom.phi + theta), std::tan(geom.phi - theta)};
}

//! Numeric minimization of eccentricity over the line-pair pencil with O at
//! vertex `first`. The parameter λ is searched as θ = atan λ so that the
//! unbounded ranges of trapezoids become finite.
inline ExtremalEllipse min_ecc_circumscribed_numeric(const ConvexQuadrilateral& quad, int first = 0,
                                                     const MinimizeOptions& opts = {})
{
  if (quad.shape == QuadShape::Parallelogram)
    throw UnsupportedShapeError("minimal eccentricity is undefined for parallelograms");
  const Pencil pencil = Pencil::line_pair(quad, first);
  const auto [lo, hi] = pencil.angular_interval();
  const auto f = [&](double th) { return ecc_psi(pencil.angular_member(th)); };
  const auto df = [&](double th) {
    return ecc_psi_derivative(pencil.angular_member(th), pencil.angular_member_derivative(th));
  };
  const MinimizeResult m = minimize_on_interval(f, df, lo, hi, opts);
  ExtremalEllipse e;
  e.conic = pencil.angular_member(m.x).normalized();
  e.geometry = detail::extract(e.conic);
  e.area = area(e.geometry);
  e.diagnostics.path = SolvePath::Numeric;
  e.diagnostics.method = "line_pair_scan_golden";
  e.diagnostics.parameter = std::tan(m.x);
  e.diagnostics.iterations = m.iterations;
  e.diagnostics.residuals["theta"] = m.x;
  e.diagnostics.residuals["vertex"] = vertex_residual(e.conic, quad);
  e.diagnostics.residuals["bracket_width"] = m.bracket_hi - m.bracket_lo;
  return e;
}

//! Squared minimal eccentricity for the right trapezoid (0,0),(1,0),(1,t),(0,1):
//! 2|t−1| / (√((t−1)² + 4) + |t−1|).
inline double trapezoid_circum_ecc_sq(double t)
{
  const double d = std::abs(t - 1);
  return 2 * d / (std::sqrt(d * d + 4) + d);
}

//! Optimal trapezoid pencil parameter ½(t² − 2t + 3).
inline double trapezoid_circum_parameter(double t) { return 0.5 * (t * t - 2 * t + 3); }

//! Circumscribed ellipse of minimal eccentricity.
//!
//! Cyclic inputs give the circumcircle. A right-angle frame uses the closed
//! form for v0, and the congruent right trapezoid uses u = ½(t² − 2t + 3).
//! Everything else is minimized numerically over the pencil.
inline ExtremalEllipse min_ecc_circumscribed(const ConvexQuadrilateral& quad)
{
  if (quad.shape == QuadShape::Parallelogram)
    throw UnsupportedShapeError("minimal eccentricity is undefined for parallelograms");

  if (is_cyclic(quad)) {
    ExtremalEllipse e = detail::circle_result(circumcircle(quad), "circumcircle");
    e.diagnostics.residuals["vertex"] = vertex_residual(e.conic, quad);
    return e;
  }

  if (const auto frame = try_steiner_frame(quad)) {
    const SteinerSolution sol = min_ecc_frame_solution(*frame);
    const Pencil pencil = Pencil::frame(*frame);
    ExtremalEllipse e;
    e.conic = pencil.world_member(sol.v0).normalized();
    e.geometry = detail::extract(e.conic);
    e.area = area(e.geometry);
    e.diagnostics.path = SolvePath::ClosedForm;
    e.diagnostics.method = "steiner_frame";
    e.diagnostics.parameter = sol.v0;
    e.diagnostics.residuals["vertex"] = vertex_residual(e.conic, quad);
    e.diagnostics.residuals["ratio_ba"] =
      std::abs(e.geometry.b / e.geometry.a - sol.ratio_ba);
    return e;
  }

  if (const auto match = match_right_trapezoid(quad)) {
    const double t = match->t;
    const double u = trapezoid_circum_parameter(t);
    const Pencil pencil = Pencil::trapezoid(t);
    ExtremalEllipse e;
    e.conic = transform_conic(pencil.member(u), match->to_canonical.inverse()).normalized();
    e.geometry = detail::extract(e.conic);
    e.area = area(e.geometry);
    e.diagnostics.path = SolvePath::ClosedForm;
    e.diagnostics.method = "right_trapezoid";
    e.diagnostics.parameter = u;
    e.diagnostics.residuals["vertex"] = vertex_residual(e.conic, quad);
    e.diagnostics.residuals["ecc_sq"] =
      std::abs(e.geometry.ecc * e.geometry.ecc - trapezoid_circum_ecc_sq(t));
    return e;
  }

  return min_ecc_circumscribed_numeric(quad);
}

} // namespace quadell
