#pragma once

//! @file
//! Quadrilaterals whose least eccentric inscribed and circumscribed
//! ellipses have the same eccentricity.

#include <quadell/errors.hpp>
#include <quadell/inscribed.hpp>
#include <quadell/min_ecc.hpp>
#include <quadell/polynomial.hpp>
#include <quadell/quad.hpp>

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <vector>

namespace quadell {

struct BiellipticReport
{
  double ecc_inscribed = 0;
  double ecc_circumscribed = 0;
  std::optional<double> tau; //!< common eccentricity, when the two agree within tol
  bool cyclic = false;
  bool tangential = false;
  bool bicentric = false;
  SolvePath inscribed_path = SolvePath::ClosedForm;
  SolvePath circumscribed_path = SolvePath::ClosedForm;
};

inline BiellipticReport classify_bielliptic(const ConvexQuadrilateral& quad, double tol = 1e-6)
{
  const ExtremalEllipse in = min_ecc_inscribed(quad);
  const ExtremalEllipse out = min_ecc_circumscribed(quad);
  BiellipticReport r;
  r.ecc_inscribed = in.geometry.ecc;
  r.ecc_circumscribed = out.geometry.ecc;
  r.inscribed_path = in.diagnostics.path;
  r.circumscribed_path = out.diagnostics.path;
  r.cyclic = is_cyclic(quad);
  r.tangential = is_tangential(quad);
  r.bicentric = r.cyclic && r.tangential;
  if (std::abs(r.ecc_inscribed - r.ecc_circumscribed) < tol)
    r.tau = 0.5 * (r.ecc_inscribed + r.ecc_circumscribed);
  return r;
}

//! Member of the family joining the tangential quadrilateral s = t = 2
//! (r = 0) to the cyclic one s = ½, t = (1+√2)/2 (r = 1).
struct FamilyMember
{
  double r = 0;
  double s = 0;
  double t = 0;
  ConvexQuadrilateral quad;
  bool cyclic = false;
  bool tangential = false;
  bool trapezoid = false;
  //! (2s−1)² + (2t−1)² − 2 minus its factored form; zero up to rounding.
  double factorization_residual = 0;
};

inline FamilyMember family_member(double r)
{
  if (!(r >= 0 && r <= 1))
    throw DomainError("family parameter must lie in [0, 1]", 0, 1);
  const double sqrt2 = std::numbers::sqrt2;
  FamilyMember m;
  m.r = r;
  m.s = -1.5 * r + 2;
  m.t = r * (0.5 + 0.5 * sqrt2) + 2 - 2 * r;
  if (std::abs(m.s - 1) <= 1e-12)
    m.s = 1;
  m.quad = m.s == 1 ? canonical_trapezoid(m.t) : canonical_quad(m.s, m.t);
  m.cyclic = is_cyclic(m.quad);
  m.tangential = is_tangential(m.quad);
  m.trapezoid = m.quad.shape == QuadShape::Trapezoid;
  const double lhs = (2 * m.s - 1) * (2 * m.s - 1) + (2 * m.t - 1) * (2 * m.t - 1) - 2;
  const double rhs = -(2.0 / 41) * (-10 + 3 * sqrt2) * (r - 1) * (41 * r - 40 - 12 * sqrt2);
  m.factorization_residual = lhs - rhs;
  return m;
}

struct FamilyEccentricities
{
  double ecc_inscribed = 0;
  double ecc_circumscribed = 0;
  double delta() const { return ecc_inscribed - ecc_circumscribed; }
};

inline FamilyEccentricities family_eccentricities(double r)
{
  const FamilyMember m = family_member(r);
  return {min_ecc_inscribed(m.quad).geometry.ecc, min_ecc_circumscribed(m.quad).geometry.ecc};
}

struct FamilySearchResult
{
  double r0 = 0;
  double tau = 0;
  double ecc_inscribed = 0;
  double ecc_circumscribed = 0;
  double s = 0;
  double t = 0;
  bool cyclic = false;
  bool tangential = false;
  std::vector<double> roots; //!< every sign change of ecc_I − ecc_O found
  int evaluations = 0;
};

//! Scans ecc_I(r) − ecc_O(r) on [0, 1], bisects every sign change and reports
//! the first root as r0.
inline FamilySearchResult find_bielliptic_in_family(int scan = 32)
{
  FamilySearchResult res;
  const auto delta = [&](double r) {
    ++res.evaluations;
    return family_eccentricities(r).delta();
  };
  std::vector<double> rs(scan + 1), ds(scan + 1);
  for (int i = 0; i <= scan; ++i) {
    rs[i] = static_cast<double>(i) / scan;
    ds[i] = delta(rs[i]);
  }
  if (!(ds.front() < 0 && ds.back() > 0))
    throw NumericError("family endpoints do not bracket a bielliptic member");
  for (int i = 0; i < scan; ++i) {
    if (ds[i] == 0) {
      res.roots.push_back(rs[i]);
      continue;
    }
    if ((ds[i] > 0) == (ds[i + 1] > 0) || ds[i + 1] == 0)
      continue;
    double lo = rs[i], hi = rs[i + 1], dlo = ds[i];
    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < 100; ++it) {
      mid = 0.5 * (lo + hi);
      const double dm = delta(mid);
      if (std::abs(dm) < 1e-12 || hi - lo < 1e-13)
        break;
      if ((dm > 0) == (dlo > 0)) {
        lo = mid;
        dlo = dm;
      } else {
        hi = mid;
      }
    }
    res.roots.push_back(mid);
  }
  if (res.roots.empty())
    throw NumericError("no sign change of the eccentricity gap was isolated");
  res.r0 = res.roots.front();
  const FamilyMember m = family_member(res.r0);
  const FamilyEccentricities e = family_eccentricities(res.r0);
  res.ecc_inscribed = e.ecc_inscribed;
  res.ecc_circumscribed = e.ecc_circumscribed;
  res.tau = 0.5 * (e.ecc_inscribed + e.ecc_circumscribed);
  res.s = m.s;
  res.t = m.t;
  res.cyclic = m.cyclic;
  res.tangential = m.tangential;
  return res;
}

//! p(x) = 32x¹¹ − 287x¹⁰ + 1006x⁹ − 1487x⁸ + 160x⁷ + 1762x⁶ − 884x⁵ − 822x⁴
//!        + 80x³ + 333x² + 150x + 21.
inline const Polynomial& poly_p()
{
  static const Polynomial p{21, 150, 333, 80, -822, -884, 1762, 160, -1487, 1006, -287, 32};
  return p;
}

//! Compensated evaluation; exact at small integers and dyadic rationals.
inline double poly_p_value(double x) { return poly_p().eval_compensated(x); }

inline std::vector<double> poly_p_real_roots() { return real_roots(poly_p(), -10, 10, 20000); }

//! Second equation of the trapezoid system, in (t, k).
inline double trapezoid_bielliptic_equation(double t, double k)
{
  const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t, t6 = t5 * t;
  const double k2 = k * k;
  return 16 * (t - 1) * (t - 1) * k2 * k2 +
         (16 * t5 - 64 * t4 + 96 * t3 - 56 * t2 + 64 * t + 8) * k2 -
         8 * t * (1 + t) * (t2 - 4 * t + 5) * (t2 + 1) * k + 4 * t6 - 16 * t5 + 24 * t4 -
         16 * t3 + 21 * t2 - 2 * t + 1;
}

struct TrapezoidBiellipticSolution
{
  double rho = 0;
  double t = 0;
  double k = 0;
  double tau = 0;              //!< √ of the circumscribed squared minimum at t
  double tau_variant = 0;      //!< √ of the variant inscribed formula at k
  double ecc_inscribed = 0;    //!< √ of the true inscribed squared minimum at t
  double residual_cubic = 0;
  double residual_equation = 0;
  int newton_steps = 0;
};

//! Root of p in (1, 1.5), mapped to t = (2ρ³ − 3ρ² + 1 − 2ρ)/(3ρ² − 4ρ − 1)
//! and k = ρ/2, then polished by Newton on the pair (c(k), second equation).
//!
//! The system is the one obtained by equating the circumscribed minimum with
//! the variant inscribed formula; `ecc_inscribed` reports the actual
//! inscribed minimum at the same t for comparison.
inline TrapezoidBiellipticSolution trapezoid_bielliptic_solve()
{
  TrapezoidBiellipticSolution s;
  const Polynomial& p = poly_p();
  if (!(p.eval_compensated(1.0) > 0 && p.eval_compensated(1.5) < 0))
    throw NumericError("p does not change sign on (1, 1.5)");
  s.rho = newton_polish(p, bisect([&](double x) { return p.eval_compensated(x); }, 1.0, 1.5), 1.0, 1.5);
  const double rho = s.rho;
  double t = (2 * rho * rho * rho - 3 * rho * rho + 1 - 2 * rho) / (3 * rho * rho - 4 * rho - 1);
  double k = rho / 2;

  const auto F = [](double tt, double kk) {
    return Eigen::Vector2d(trapezoid_inscribed_cubic(tt).eval_compensated(kk),
                           trapezoid_bielliptic_equation(tt, kk));
  };
  for (int it = 0; it < 20; ++it) {
    const Eigen::Vector2d f = F(t, k);
    if (f.lpNorm<Eigen::Infinity>() < 1e-14)
      break;
    constexpr double h = 1e-7;
    Eigen::Matrix2d jac;
    jac.col(0) = (F(t + h, k) - F(t - h, k)) / (2 * h);
    jac.col(1) = (F(t, k + h) - F(t, k - h)) / (2 * h);
    const Eigen::Vector2d step = jac.fullPivLu().solve(f);
    const Eigen::Vector2d next(t - step(0), k - step(1));
    if (F(next(0), next(1)).lpNorm<Eigen::Infinity>() >= f.lpNorm<Eigen::Infinity>())
      break;
    t = next(0);
    k = next(1);
    ++s.newton_steps;
  }
  s.t = t;
  s.k = k;
  const Eigen::Vector2d f = F(t, k);
  s.residual_cubic = std::abs(f(0));
  s.residual_equation = std::abs(f(1));
  if (s.residual_cubic > 1e-8 || s.residual_equation > 1e-8)
    throw NumericError("trapezoid bielliptic system did not converge");
  s.tau = std::sqrt(trapezoid_circum_ecc_sq(t));
  s.tau_variant = std::sqrt(trapezoid_inscribed_ecc_sq_variant(t, k));
  s.ecc_inscribed = std::sqrt(solve_trapezoid_inscribed(t).ecc_sq);
  return s;
}

} // namespace quadell
