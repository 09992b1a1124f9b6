#pragma once

//! @file
//! The one-parameter family of conics through four points.
//!
//! Every kind is linear in its parameter: member(x) = x·G1 + G0 in the
//! pencil's own coordinates. Closed forms for the ellipse interval, member
//! centers and member axes are provided for the frame, canonical and
//! trapezoid kinds.

#include <quadell/conic.hpp>
#include <quadell/errors.hpp>
#include <quadell/quad.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <utility>

namespace quadell {

//! Open interval; `hi` may be +infinity.
struct Interval
{
  double lo = 0;
  double hi = 0;

  //! Strict membership with endpoints excluded at relative 1e−12.
  bool contains(double x) const
  {
    if (!std::isfinite(x))
      return false;
    if (std::isfinite(lo) && !(x > lo + 1e-12 * std::max(1.0, std::abs(lo))))
      return false;
    if (std::isinf(hi))
      return true;
    return x < hi - 1e-12 * std::max(1.0, std::abs(hi));
  }

  bool bounded() const { return std::isfinite(lo) && std::isfinite(hi); }
};

enum class PencilKind
{
  FrameV,
  CanonicalU,
  TrapezoidU,
  CartesianLinePair
};

inline std::string_view to_string(PencilKind k)
{
  switch (k) {
  case PencilKind::FrameV: return "frame_v";
  case PencilKind::CanonicalU: return "canonical_u";
  case PencilKind::TrapezoidU: return "trapezoid_u";
  case PencilKind::CartesianLinePair: return "line_pair";
  }
  return "unknown";
}

//! Real line a·x + b·y + c with unit normal (a, b).
struct Line
{
  double a = 0, b = 0, c = 0;

  double operator()(const Point& p) const { return a * p.x() + b * p.y() + c; }

  //! Line through two points, oriented positive at `inside`.
  static Line through(const Point& p0, const Point& p1, const Point& inside)
  {
    const Point d = (p1 - p0).normalized();
    Line l{-d.y(), d.x(), 0};
    l.c = -(l.a * p0.x() + l.b * p0.y());
    if (l(inside) < 0)
      l = {-l.a, -l.b, -l.c};
    return l;
  }
};

//! The conic ℓ1·ℓ2 = 0.
inline Conic line_product(const Line& l1, const Line& l2)
{
  return {l1.a * l2.a,
          l1.b * l2.b,
          0.5 * (l1.a * l2.b + l1.b * l2.a),
          l1.a * l2.c + l1.c * l2.a,
          l1.b * l2.c + l1.c * l2.b,
          l1.c * l2.c};
}

namespace detail {

inline Conic combine(const Conic& g1, const Conic& g0, double x1, double x0)
{
  return {x1 * g1.A + x0 * g0.A, x1 * g1.B + x0 * g0.B, x1 * g1.C + x0 * g0.C,
          x1 * g1.D + x0 * g0.D, x1 * g1.E + x0 * g0.E, x1 * g1.F + x0 * g0.F};
}

//! Roots of a·x² + b·x + c without cancellation; requires a real pair.
inline std::pair<double, double> stable_roots(double a, double b, double c)
{
  const double disc = b * b - 4 * a * c;
  if (disc < 0)
    throw NumericError("pencil has no ellipse members");
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  double r1 = q / a, r2 = c / q;
  if (r1 > r2)
    std::swap(r1, r2);
  return {r1, r2};
}

} // namespace detail

//! Closed-form data of the frame pencil k v x² + h y² + (v p + q) x y − v k p x − h q y = 0.
struct FramePencilData
{
  double h, k, p, q;

  //! g(v) = −p² v² + (4kh − 2pq) v − q², four times AB − C².
  double g(double v) const { return -p * p * v * v + (4 * k * h - 2 * p * q) * v - q * q; }

  Interval interval() const
  {
    const double hi = (2 * k * h - p * q + 2 * std::sqrt(k * h * (k * h - p * q))) / (p * p);
    return {q * q / (p * p * hi), hi};
  }
};

//! Closed-form data of the canonical pencil through (0,0), (1,0), (0,1), (s,t).
struct CanonicalPencilData
{
  double s, t;

  //! α(u) = s²(s−1)²u² − 2st(st+s+t−1)u + t²(t−1)²; −4(AB − C²).
  double alpha(double u) const
  {
    return s * s * (s - 1) * (s - 1) * u * u - 2 * s * t * (s * t + s + t - 1) * u +
           t * t * (t - 1) * (t - 1);
  }

  Interval interval() const
  {
    const double hi = t / (s * (s - 1) * (s - 1)) *
                      (s + t - 1 + s * t + 2 * std::sqrt(s * t * (s + t - 1)));
    return {t * t * (t - 1) * (t - 1) / (s * s * (s - 1) * (s - 1) * hi), hi};
  }
};

//! Pencil of conics through the four vertices of a quadrilateral.
class Pencil
{
public:
  //! Frame pencil: parameter v, frame coordinates.
  static Pencil frame(const SteinerFrame& f)
  {
    Pencil p;
    p.kind_ = PencilKind::FrameV;
    p.h_ = f.h;
    p.k_ = f.k;
    p.p_ = f.p;
    p.q_ = f.q;
    p.g1_ = {f.k, 0, f.p / 2, -f.k * f.p, 0, 0};
    p.g0_ = {0, f.h, f.q / 2, 0, -f.h * f.q, 0};
    p.interval_ = FramePencilData{f.h, f.k, f.p, f.q}.interval();
    p.to_world_ = f.to_frame.inverse();
    return p;
  }

  //! Canonical pencil: parameter u, vertices (0,0), (1,0), (0,1), (s,t).
  static Pencil canonical(double s, double t)
  {
    if (!(s > 0 && t > 0 && s + t > 1) || s == 1 || t == 1 || !std::isfinite(s) ||
        !std::isfinite(t))
      throw DomainError("canonical pencil requires s, t > 0, s + t > 1, s != 1, t != 1",
                        1, std::numeric_limits<double>::infinity());
    Pencil p;
    p.kind_ = PencilKind::CanonicalU;
    p.s_ = s;
    p.t_ = t;
    const double st = s * t;
    p.g1_ = {st, 0, -0.5 * s * (s - 1), -st, 0, 0};
    p.g0_ = {0, st, -0.5 * t * (t - 1), 0, -st, 0};
    p.interval_ = CanonicalPencilData{s, t}.interval();
    return p;
  }

  //! Trapezoid pencil: parameter u, vertices (0,0), (1,0), (0,1), (1,t).
  static Pencil trapezoid(double t)
  {
    if (!(t > 0) || std::abs(t - 1) < 1e-7 || !std::isfinite(t))
      throw DomainError("trapezoid pencil requires t > 0 and t != 1", 0,
                        std::numeric_limits<double>::infinity());
    Pencil p;
    p.kind_ = PencilKind::TrapezoidU;
    p.t_ = t;
    p.g1_ = {t, 0, 0, -t, 0, 0};
    p.g0_ = {0, t, -0.5 * t * (t - 1), 0, -t, 0};
    p.interval_ = {0.25 * (t - 1) * (t - 1), std::numeric_limits<double>::infinity()};
    return p;
  }

  //! λ·(ℓ_OQ ℓ_PR) + (ℓ_OP ℓ_QR) in original coordinates, where O is vertex
  //! `first` and the side lines have unit normals pointing inside.
  static Pencil line_pair(const ConvexQuadrilateral& quad, int first = 0)
  {
    const VertexRoles r = rotation_roles(first);
    const Point c = quad.centroid();
    const Point O = quad[r.O], P = quad[r.P], R = quad[r.R], Q = quad[r.Q];
    Pencil p;
    p.kind_ = PencilKind::CartesianLinePair;
    p.roles_ = r;
    p.g1_ = line_product(Line::through(O, Q, c), Line::through(P, R, c));
    p.g0_ = line_product(Line::through(O, P, c), Line::through(Q, R, c));
    p.interval_ = p.line_pair_interval();
    return p;
  }

  PencilKind kind() const { return kind_; }
  const Interval& interval() const { return interval_; }
  const Conic& g1() const { return g1_; }
  const Conic& g0() const { return g0_; }
  const AffineMap& to_world() const { return to_world_; }
  const VertexRoles& roles() const { return roles_; }
  double s() const { return s_; }
  double t() const { return t_; }
  FramePencilData frame_data() const { return {h_, k_, p_, q_}; }

  //! Member without the interval check; used for endpoint analysis.
  Conic member_unchecked(double x) const { return detail::combine(g1_, g0_, x, 1); }

  //! Member for an interior parameter, in the pencil's own coordinates.
  Conic member(double x) const
  {
    require(x);
    return member_unchecked(x);
  }

  //! Member transported to the original coordinates.
  Conic world_member(double x) const { return transform_conic(member(x), to_world_); }

  //! Homogeneous angular form: sin θ · G1 + cos θ · G0, i.e. λ = tan θ up to
  //! a positive scale for θ in (−π/2, π/2).
  Conic angular_member(double theta) const
  {
    return detail::combine(g1_, g0_, std::sin(theta), std::cos(theta));
  }

  //! d/dθ of `angular_member`.
  Conic angular_member_derivative(double theta) const
  {
    return detail::combine(g1_, g0_, std::cos(theta), -std::sin(theta));
  }

  //! The ellipse interval mapped by θ = atan(x).
  std::pair<double, double> angular_interval() const
  {
    return {std::atan(interval_.lo), std::atan(interval_.hi)};
  }

  //! Center from the closed forms of the frame, canonical and trapezoid
  //! kinds, with no interval check.
  Point raw_center(double x) const
  {
    switch (kind_) {
    case PencilKind::FrameV: {
      const double v = x, h = h_, k = k_, p = p_, q = q_;
      const double g = FramePencilData{h, k, p, q}.g(v);
      return {h * (2 * v * k * p - q * (v * p + q)) / g, k * v * (2 * h * q - p * (v * p + q)) / g};
    }
    case PencilKind::CanonicalU: {
      const double u = x, s = s_, t = t_;
      const double den = -CanonicalPencilData{s, t}.alpha(u);
      return {s * t * ((2 * s * t + s * s - s) * u + (t * t - t)) / den,
              s * t * u * (s * (s - 1) * u + 2 * s * t + t * t - t) / den};
    }
    case PencilKind::TrapezoidU: {
      const double u = x, t = t_;
      const double den = 4 * u - (t - 1) * (t - 1);
      return {(2 * u + t - 1) / den, (1 + t) * u / den};
    }
    case PencilKind::CartesianLinePair: break;
    }
    return ellipse_geometry(member_unchecked(x)).center;
  }

  Point member_center(double x) const
  {
    require(x);
    return raw_center(x);
  }

  //! Squared semi-axes (a², b²) from the closed forms.
  std::pair<double, double> member_axes(double x) const
  {
    require(x);
    switch (kind_) {
    case PencilKind::FrameV: {
      const double v = x, h = h_, k = k_, p = p_, q = q_;
      const double g = FramePencilData{h, k, p, q}.g(v);
      const double num = k * h * v * (v * p * p * (k - q) + q * q * (h - p));
      const double S = k * v + h;
      const double root = std::hypot(k * v - h, v * p + q);
      return {2 * num * (S + root) / (g * g), 2 * num / (g * (S + root))};
    }
    case PencilKind::CanonicalU: {
      const double u = x, s = s_, t = t_;
      const double alpha = CanonicalPencilData{s, t}.alpha(u);
      const double num = u * (s * u + t) * s * s * t * t * (s + t - 1);
      const double S = s * t * (u + 1);
      const double root = std::hypot(s * t * (u - 1), s * (s - 1) * u + t * (t - 1));
      return {2 * num * (S + root) / (alpha * alpha), -2 * num / (alpha * (S + root))};
    }
    case PencilKind::TrapezoidU: {
      const double u = x, t = t_;
      const double den = 4 * u - (t - 1) * (t - 1);
      const double rho = std::hypot(t - 1, u - 1);
      return {2 * u * (u + t) * (u + 1 + rho) / (den * den), 2 * u * (u + t) / (den * (u + 1 + rho))};
    }
    case PencilKind::CartesianLinePair: break;
    }
    throw InputError("axis closed forms are not available for line-pair pencils");
  }

private:
  void require(double x) const
  {
    if (!interval_.contains(x)) {
      std::ostringstream os;
      os.precision(17);
      os << "pencil parameter " << x << " outside the ellipse interval (" << interval_.lo
         << ", " << interval_.hi << ")";
      throw DomainError(os.str(), interval_.lo, interval_.hi);
    }
  }

  //! AB − C² of x·G1 + G0 is a quadratic in x; the ellipse members are where it
  //! is positive.
  Interval line_pair_interval() const
  {
    const double a = g1_.A * g1_.B - g1_.C * g1_.C;
    const double c = g0_.A * g0_.B - g0_.C * g0_.C;
    const double b = g1_.A * g0_.B + g0_.A * g1_.B - 2 * g1_.C * g0_.C;
    const double scale = std::abs(a) + std::abs(b) + std::abs(c);
    const double inf = std::numeric_limits<double>::infinity();
    const double ta = 1e-12 * scale;
    if (std::abs(a) <= ta && std::abs(c) <= ta)
      throw UnsupportedShapeError("parallelogram pencils have no bounded parameter range");
    if (std::abs(a) <= ta) {
      // Linear: b x + c > 0.
      return b > 0 ? Interval{-c / b, inf} : Interval{-inf, -c / b};
    }
    if (std::abs(c) <= ta) {
      // x (a x + b) > 0 with a < 0.
      return -b / a > 0 ? Interval{0, -b / a} : Interval{-b / a, 0};
    }
    const auto [r1, r2] = detail::stable_roots(a, b, c);
    return {r1, r2};
  }

  PencilKind kind_ = PencilKind::CanonicalU;
  Conic g1_, g0_;
  Interval interval_;
  AffineMap to_world_;
  VertexRoles roles_;
  double h_ = 0, k_ = 0, p_ = 0, q_ = 0, s_ = 0, t_ = 0;
};

//! Frame parameter v ↦ parameter of the line-pair pencil built with the
//! frame's O as first vertex.
inline double frame_to_line_pair(const SteinerFrame& f, double v)
{
  return v * std::hypot(f.k, f.p) / std::hypot(f.q, f.h);
}

} // namespace quadell
