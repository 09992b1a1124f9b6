#pragma once

#include <quadell/errors.hpp>

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace quadell {

struct MinimizeOptions
{
  int scan_points = 1024;
  int max_golden = 200;
  int max_bisect = 200;
  double xtol = 0; //!< absolute; 0 means "to machine resolution"
};

struct MinimizeResult
{
  double x = 0;
  double fx = 0;
  int iterations = 0;
  double bracket_lo = 0;
  double bracket_hi = 0;
  double scan_min = 0; //!< best objective value seen in the scan
};

//! Minimizes `f` on the open interval (lo, hi).
//!
//! A uniform scan of interior points picks the best cell. Golden-section
//! narrows it, and bisection on the sign of `df` over the same cell gives
//! the final digits when the derivative changes sign there. The result is
//! checked against the scan so that a wandering search cannot report a
//! worse point than one already seen.
template<class F, class DF>
MinimizeResult minimize_on_interval(F&& f, DF&& df, double lo, double hi,
                                    const MinimizeOptions& opts = {})
{
  if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi))
    throw NumericError("minimization interval is empty or unbounded");
  const int n = opts.scan_points;
  const double h = (hi - lo) / (n + 1);
  int best = 1;
  double fbest = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= n; ++i) {
    const double v = f(lo + i * h);
    if (v < fbest) {
      fbest = v;
      best = i;
    }
  }
  if (!std::isfinite(fbest))
    throw NumericError("objective is not finite anywhere on the scan");

  MinimizeResult res;
  res.scan_min = fbest;
  double a = lo + (best - 1) * h;
  double b = lo + (best + 1) * h;
  res.bracket_lo = a;
  res.bracket_hi = b;

  constexpr double inv_phi = 0.6180339887498949;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  int it = 0;
  for (; it < opts.max_golden; ++it) {
    if (b - a <= std::max(opts.xtol, 1e-9 * (std::abs(a) + std::abs(b)) + 1e-300))
      break;
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }

  // Golden-section stalls once f is flat to rounding, so the final digits
  // come from the sign of the derivative on the scan cell.
  const double cell_lo = res.bracket_lo, cell_hi = res.bracket_hi;
  double blo = cell_lo, bhi = cell_hi;
  double x = 0.5 * (a + b);
  if (df(blo) < 0 && df(bhi) > 0) {
    for (int j = 0; j < opts.max_bisect; ++j, ++it) {
      const double mid = 0.5 * (blo + bhi);
      if (mid <= blo || mid >= bhi || bhi - blo <= opts.xtol)
        break;
      const double dm = df(mid);
      if (dm == 0) {
        blo = bhi = mid;
        break;
      }
      if (dm < 0)
        blo = mid;
      else
        bhi = mid;
    }
    x = 0.5 * (blo + bhi);
  }
  double fx = f(x);
  const double fgold = f(0.5 * (a + b));
  if (fx > fgold + 1e-14 * std::abs(fgold)) {
    x = 0.5 * (a + b);
    fx = fgold;
  }

  res.x = x;
  res.fx = fx;
  res.iterations = it;
  res.bracket_lo = blo;
  res.bracket_hi = bhi;
  const double slack = 1e-12 * std::max(1.0, std::abs(fbest));
  if (!std::isfinite(fx) || fx > fbest + slack) {
    std::ostringstream os;
    os.precision(17);
    os << "minimizer did not improve on the scan: bracket [" << blo << ", " << bhi
       << "], f = " << fx << ", scan best = " << fbest;
    throw NumericError(os.str());
  }
  return res;
}

} // namespace quadell
