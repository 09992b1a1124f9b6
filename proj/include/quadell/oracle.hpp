#pragma once

//! @file
//! Ellipse extraction through an eigen-decomposition of the quadratic part,
//! independent of the closed forms in conic.hpp. Used to cross-check them.

#include <quadell/conic.hpp>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

namespace quadell {

inline EllipseGeometry eigen_geometry(const Conic& conic)
{
  Conic c = conic.normalized();
  Eigen::Matrix2d q;
  q << c.A, c.C, c.C, c.B;
  const Eigen::Vector2d center = q.ldlt().solve(Eigen::Vector2d(-c.D / 2, -c.E / 2));
  const double fc = c(center);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(q);
  const Eigen::Vector2d lam = es.eigenvalues(); // ascending
  EllipseGeometry g;
  g.center = center;
  g.a = std::sqrt(-fc / lam(0));
  g.b = std::sqrt(-fc / lam(1));
  const Eigen::Vector2d major = es.eigenvectors().col(0);
  double phi = std::atan2(major.y(), major.x());
  phi = std::fmod(phi + 2 * std::numbers::pi, std::numbers::pi);
  g.phi = phi;
  g.ecc = std::sqrt(1 - (g.b * g.b) / (g.a * g.a));
  return g;
}

//! Difference of two axis angles modulo π, in [0, π/2].
inline double angle_gap(double a, double b)
{
  double d = std::fmod(std::abs(a - b), std::numbers::pi);
  return std::min(d, std::numbers::pi - d);
}

} // namespace quadell
