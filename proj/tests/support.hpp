#pragma once

#include <quadell/conic.hpp>
#include <quadell/quad.hpp>

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>

namespace quadell::testing {

inline constexpr double sqrt2 = std::numbers::sqrt2;
inline constexpr double sqrt3 = std::numbers::sqrt3;
inline constexpr double pi = std::numbers::pi;

inline ConvexQuadrilateral quad(std::array<Point, 4> v) { return validate(v); }

inline ConvexQuadrilateral square() { return quad({Point(0, 0), Point(1, 0), Point(1, 1), Point(0, 1)}); }

//! The cyclic member of the one-parameter family used by the bielliptic tests.
inline ConvexQuadrilateral cyclic_example() { return canonical_quad(0.5, (1 + sqrt2) / 2); }

inline double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

//! Max over the four vertices of |conic(v)| relative to the coefficient scale.
inline double through_vertices(const Conic& c, const ConvexQuadrilateral& q)
{
  double worst = 0;
  for (int i = 0; i < 4; ++i)
    worst = std::max(worst, std::abs(c(q[i])) / c.max_abs());
  return worst;
}

} // namespace quadell::testing
