#pragma once

//! @file
//! Seeded generators for randomized checks. Each trial draws from its own
//! engine seeded by (seed, index), so results do not depend on scheduling.

#include <quadell/conic.hpp>
#include <quadell/quad.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace quadell {

using Rng = std::mt19937_64;

inline Rng trial_rng(std::uint64_t seed, std::uint64_t index)
{
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

inline double uniform(Rng& rng, double lo, double hi)
{
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

//! Ellipse with b/a in [0.1, 0.9].
inline EllipseGeometry random_ellipse(Rng& rng)
{
  EllipseGeometry g;
  g.center = Point(uniform(rng, -5, 5), uniform(rng, -5, 5));
  g.a = uniform(rng, 0.5, 5);
  g.b = g.a * uniform(rng, 0.1, 0.9);
  g.phi = uniform(rng, 0, std::numbers::pi);
  g.ecc = std::sqrt(1 - (g.b * g.b) / (g.a * g.a));
  return g;
}

//! Ellipse conic with a random nonzero scale and sign.
inline Conic random_ellipse_conic(Rng& rng, EllipseGeometry* truth = nullptr)
{
  const EllipseGeometry g = random_ellipse(rng);
  if (truth)
    *truth = g;
  const double k = uniform(rng, 0.1, 10) * (uniform(rng, 0, 1) < 0.5 ? -1 : 1);
  return conic_from_geometry(g).scaled(k);
}

inline SteinerFrame random_frame(Rng& rng)
{
  const double p = uniform(rng, 0.5, 2);
  const double q = uniform(rng, 0.5, 2);
  const double h = p * (1 + uniform(rng, 0.1, 3));
  const double k = q * (1 + uniform(rng, 0.1, 3));
  return make_frame(h, k, p, q);
}

//! (s, t) with s, t in (0.2, 4), s + t > 1.1 and both at least 0.05 away from 1.
inline std::pair<double, double> random_st(Rng& rng)
{
  for (;;) {
    const double s = uniform(rng, 0.2, 4), t = uniform(rng, 0.2, 4);
    if (s + t > 1.1 && std::abs(s - 1) > 0.05 && std::abs(t - 1) > 0.05)
      return {s, t};
  }
}

//! Invertible map with condition number at most about 10.
inline AffineMap random_affine(Rng& rng)
{
  for (;;) {
    Eigen::Matrix2d m;
    m << uniform(rng, -2, 2), uniform(rng, -2, 2), uniform(rng, -2, 2), uniform(rng, -2, 2);
    Eigen::JacobiSVD<Eigen::Matrix2d> svd(m);
    const auto sv = svd.singularValues();
    if (sv(1) > 0.2 && sv(0) / sv(1) < 10)
      return AffineMap(m, Eigen::Vector2d(uniform(rng, -3, 3), uniform(rng, -3, 3)));
  }
}

inline ConvexQuadrilateral map_quad(const ConvexQuadrilateral& q, const AffineMap& m)
{
  return validate({m(q[0]), m(q[1]), m(q[2]), m(q[3])});
}

//! Affine image of a random canonical quadrilateral: no parallel sides.
inline ConvexQuadrilateral random_convex_quad(Rng& rng)
{
  const auto [s, t] = random_st(rng);
  return map_quad(canonical_quad(s, t), random_affine(rng));
}

//! Four points on a random circle with angular gaps of at least 0.3.
inline ConvexQuadrilateral random_cyclic_quad(Rng& rng)
{
  for (;;) {
    std::array<double, 4> ang;
    for (auto& a : ang)
      a = uniform(rng, 0, 2 * std::numbers::pi);
    std::sort(ang.begin(), ang.end());
    bool ok = ang[0] + 2 * std::numbers::pi - ang[3] > 0.3;
    for (int i = 0; i < 3; ++i)
      ok = ok && ang[i + 1] - ang[i] > 0.3;
    if (!ok)
      continue;
    const Point c(uniform(rng, -3, 3), uniform(rng, -3, 3));
    const double r = uniform(rng, 0.5, 3);
    std::array<Point, 4> v;
    for (int i = 0; i < 4; ++i)
      v[i] = c + r * Point(std::cos(ang[i]), std::sin(ang[i]));
    const ConvexQuadrilateral q = validate(v);
    if (q.shape == QuadShape::General)
      return q;
  }
}

//! Quadrilateral circumscribed about a random circle: tangent lines at four
//! angles whose consecutive gaps lie in (0.4, π − 0.4).
inline ConvexQuadrilateral random_tangential_quad(Rng& rng)
{
  for (;;) {
    std::array<double, 4> ang;
    ang[0] = uniform(rng, 0, 2 * std::numbers::pi);
    double total = 0;
    std::array<double, 4> gaps;
    for (int i = 0; i < 3; ++i) {
      gaps[i] = uniform(rng, 0.4, std::numbers::pi - 0.4);
      total += gaps[i];
    }
    gaps[3] = 2 * std::numbers::pi - total;
    if (!(gaps[3] > 0.4 && gaps[3] < std::numbers::pi - 0.4))
      continue;
    for (int i = 1; i < 4; ++i)
      ang[i] = ang[i - 1] + gaps[i - 1];
    const Point c(uniform(rng, -3, 3), uniform(rng, -3, 3));
    const double r = uniform(rng, 0.5, 3);
    std::array<Point, 4> v;
    for (int i = 0; i < 4; ++i) {
      // Tangent lines at ang[i] and ang[i+1] meet on the bisecting ray.
      const double mid = ang[i] + gaps[i] / 2;
      const double d = r / std::cos(gaps[i] / 2);
      v[i] = c + d * Point(std::cos(mid), std::sin(mid));
    }
    const ConvexQuadrilateral q = validate(v);
    if (q.shape == QuadShape::General)
      return q;
  }
}

} // namespace quadell
