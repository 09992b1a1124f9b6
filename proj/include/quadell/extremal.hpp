#pragma once

#include <quadell/conic.hpp>
#include <quadell/quad.hpp>

#include <cmath>
#include <map>
#include <optional>
#include <string>

namespace quadell {

enum class SolvePath
{
  ClosedForm,
  Numeric,
  Extension
};

inline std::string_view to_string(SolvePath p)
{
  switch (p) {
  case SolvePath::ClosedForm: return "closed_form";
  case SolvePath::Numeric: return "numeric";
  case SolvePath::Extension: return "extension";
  }
  return "unknown";
}

struct Diagnostics
{
  SolvePath path = SolvePath::ClosedForm;
  std::string method;                   //!< which construction fired
  std::optional<double> parameter;      //!< pencil parameter of the result, if any
  int iterations = 0;
  std::map<std::string, double> residuals;
  std::string note;
};

//! A conic with its extracted geometry and solver diagnostics.
struct ExtremalEllipse
{
  Conic conic;
  EllipseGeometry geometry;
  Diagnostics diagnostics;
  double area = 0;
};

//! ((A−B)² + 4C²)/(A+B)²; the squared eccentricity is 2√ψ/(1+√ψ), so ψ is
//! a monotone stand-in for eccentricity on ellipses.
inline double ecc_psi(const Conic& c)
{
  const double d = c.A - c.B;
  const double s = c.A + c.B;
  return (d * d + 4 * c.C * c.C) / (s * s);
}

//! Derivative of `ecc_psi` along a path with tangent `dc`.
inline double ecc_psi_derivative(const Conic& c, const Conic& dc)
{
  const double d = c.A - c.B;
  const double s = c.A + c.B;
  const double n = d * d + 4 * c.C * c.C;
  const double dn = 2 * d * (dc.A - dc.B) + 8 * c.C * dc.C;
  const double ds = dc.A + dc.B;
  return (dn * s - 2 * n * ds) / (s * s * s);
}

inline double ecc_from_psi(double psi)
{
  const double r = std::sqrt(std::max(0.0, psi));
  return std::sqrt(2 * r / (1 + r));
}

//! Largest |conic(vertex)| after normalizing the conic to unit max coefficient
//! and the vertices to unit diameter.
inline double vertex_residual(const Conic& conic, const ConvexQuadrilateral& quad)
{
  const Point c = quad.centroid();
  const double scale = quad.diameter();
  const AffineMap to_unit(Eigen::Matrix2d::Identity() / scale, -c / scale);
  const Conic local = transform_conic(conic, to_unit).normalized();
  double worst = 0;
  for (int i = 0; i < 4; ++i)
    worst = std::max(worst, std::abs(local(to_unit(quad[i]))));
  return worst;
}

namespace detail {

inline ExtremalEllipse circle_result(const EllipseGeometry& g, const std::string& method)
{
  ExtremalEllipse e;
  e.geometry = g;
  e.geometry.phi = 0;
  e.geometry.ecc = 0;
  e.conic = conic_from_geometry(e.geometry);
  e.area = area(e.geometry);
  e.diagnostics.path = SolvePath::ClosedForm;
  e.diagnostics.method = method;
  return e;
}

//! Extracts geometry; a result with eccentricity below 1e−8 is reported as
//! a circle.
inline EllipseGeometry extract(const Conic& conic)
{
  EllipseGeometry g = ellipse_geometry(conic);
  if (g.ecc < 1e-8) {
    g.phi = 0;
    g.ecc = 0;
    g.a = g.b = std::sqrt(g.a * g.b);
  }
  return g;
}

} // namespace detail

} // namespace quadell
