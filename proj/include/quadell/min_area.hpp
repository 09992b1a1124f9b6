#pragma once

//! @file
//! Circumscribed ellipse of minimal area.

#include <quadell/conic.hpp>
#include <quadell/errors.hpp>
#include <quadell/extremal.hpp>
#include <quadell/minimize.hpp>
#include <quadell/pencil.hpp>
#include <quadell/polynomial.hpp>
#include <quadell/quad.hpp>

#include <cmath>
#include <limits>
#include <numbers>

namespace quadell {

//! a²b² of the canonical pencil member as a function of u, with the cubic
//! whose root is its minimizer.
struct AreaObjective
{
  double s = 0, t = 0;
  Interval interval;

  //! s²(s−1)²u² − 2st(st+s+t−1)u + t²(t−1)², negative on the interval.
  double alpha(double u) const { return CanonicalPencilData{s, t}.alpha(u); }

  //! −4u²(su+t)²s²t²(st(s+t−1))² / α(u)³.
  double beta(double u) const
  {
    const double a = alpha(u);
    const double w = s * t * (s + t - 1);
    return -4 * u * u * (s * u + t) * (s * u + t) * s * s * t * t * w * w / (a * a * a);
  }

  //! d/du log β = 2/u + 2s/(su+t) − 3α′/α.
  double log_beta_derivative(double u) const
  {
    const double a = alpha(u);
    const double da = 2 * s * s * (s - 1) * (s - 1) * u - 2 * s * t * (s * t + s + t - 1);
    return 2 / u + 2 * s / (s * u + t) - 3 * da / a;
  }

  Polynomial gamma() const
  {
    const double s2 = s * s, t2 = t * t;
    return Polynomial{-t2 * t * (t - 1) * (t - 1),
                      -s * t2 * (2 * t2 + s * t - 3 * t + s + 1),
                      s2 * t * (2 * s2 - 3 * s + s * t + 1 + t),
                      s2 * s * (s - 1) * (s - 1)};
  }

  //! d(s,t) = 2s² + st − 3s + t + 1; γ″(u) = 6s³(s−1)²u + 2s²t·d, so d ≥ 0
  //! makes γ convex for u > 0.
  double d() const { return 2 * s * s + s * t - 3 * s + t + 1; }
};

inline AreaObjective area_objective(double s, double t)
{
  const double inf = std::numeric_limits<double>::infinity();
  if (!std::isfinite(s) || !std::isfinite(t))
    throw InputError("s and t must be finite");
  if (!(s > 0 && t > 0))
    throw DomainError("s and t must be positive", 0, inf);
  if (!(s + t > 1))
    throw DomainError("s + t must exceed 1", 1, inf);
  if (s == 1 || t == 1)
    throw DomainError("s = 1 or t = 1 is a trapezoid", 1, 1);
  return {s, t, CanonicalPencilData{s, t}.interval()};
}

struct GammaRoot
{
  double u = 0;
  double residual = 0; //!< |γ(u)| relative to the magnitude of its terms
};

//! Root of γ on the ellipse interval: bisection, then Newton polish.
inline GammaRoot gamma_root(const AreaObjective& obj)
{
  const Polynomial g = obj.gamma();
  const double lo = obj.interval.lo, hi = obj.interval.hi;
  const auto val = [&](double u) { return g.eval_compensated(u); };
  if ((val(lo) > 0) == (val(hi) > 0))
    throw NumericError("cubic has no sign change on the ellipse interval");
  double u = bisect(val, lo, hi);
  u = newton_polish(g, u, lo, hi);
  double mag = 0, pw = 1;
  for (double c : g.coefficients()) {
    mag += std::abs(c) * pw;
    pw *= std::abs(u);
  }
  return {u, std::abs(val(u)) / mag};
}

//! Circumscribed ellipse of minimal area.
//!
//! Non-trapezoids are mapped to canonical form, solved through the cubic and
//! mapped back. Trapezoids are minimized numerically over the trapezoid pencil
//! through u = l/(1 − l); that result is reported as an extension.
inline ExtremalEllipse min_area_circumscribed(const ConvexQuadrilateral& quad)
{
  if (quad.shape == QuadShape::Parallelogram)
    throw UnsupportedShapeError("minimal area is not covered for parallelograms");
  const CanonicalQuad canon = canonicalize(quad);
  const AffineMap back = canon.to_canonical.inverse();

  ExtremalEllipse e;
  double canonical_area = 0;
  if (canon.kind == CanonicalQuad::Kind::GeneralST) {
    const AreaObjective obj = area_objective(canon.s, canon.t);
    const GammaRoot root = gamma_root(obj);
    const Pencil pencil = Pencil::canonical(canon.s, canon.t);
    const Conic local = pencil.member(root.u);
    canonical_area = std::numbers::pi * std::sqrt(obj.beta(root.u));
    e.conic = transform_conic(local, back).normalized();
    e.diagnostics.path = SolvePath::ClosedForm;
    e.diagnostics.method = "cubic_root";
    e.diagnostics.parameter = root.u;
    e.diagnostics.residuals["gamma"] = root.residual;
  } else {
    const double t = canon.t;
    const Pencil pencil = Pencil::trapezoid(t);
    const double u0 = pencil.interval().lo;
    const double l0 = u0 / (1 + u0);
    const auto to_u = [](double l) { return l / (1 - l); };
    const auto logobj = [&](double l) {
      const double u = to_u(l);
      return 2 * std::log(u) + 2 * std::log(u + t) - 3 * std::log(4 * u - (t - 1) * (t - 1));
    };
    const auto dlogobj = [&](double l) {
      const double u = to_u(l);
      const double du = 1 / ((1 - l) * (1 - l));
      return (2 / u + 2 / (u + t) - 12 / (4 * u - (t - 1) * (t - 1))) * du;
    };
    const MinimizeResult m = minimize_on_interval(logobj, dlogobj, l0, 1.0);
    const double u = to_u(m.x);
    const auto [a2, b2] = pencil.member_axes(u);
    canonical_area = std::numbers::pi * std::sqrt(a2 * b2);
    e.conic = transform_conic(pencil.member(u), back).normalized();
    e.diagnostics.path = SolvePath::Extension;
    e.diagnostics.method = "trapezoid_numeric";
    e.diagnostics.parameter = u;
    e.diagnostics.iterations = m.iterations;
    e.diagnostics.note = "extension: uniqueness for trapezoids is not established";
  }

  e.geometry = detail::extract(e.conic);
  e.area = area(e.geometry);
  const double transported = canonical_area / std::abs(canon.to_canonical.det());
  const double mismatch = std::abs(e.area - transported) / transported;
  e.diagnostics.residuals["area_transport"] = mismatch;
  e.diagnostics.residuals["vertex"] = vertex_residual(e.conic, quad);
  if (mismatch > 1e-10)
    throw NumericError("area after back-transport disagrees with the canonical area");
  return e;
}

} // namespace quadell
