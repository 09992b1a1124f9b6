#pragma once

#include <quadell/errors.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace quadell {

//! Dense real polynomial with coefficients in ascending powers.
class Polynomial
{
public:
  Polynomial() = default;
  Polynomial(std::initializer_list<double> ascending)
    : c_(ascending)
  {
    trim();
  }
  explicit Polynomial(std::vector<double> ascending)
    : c_(std::move(ascending))
  {
    trim();
  }

  const std::vector<double>& coefficients() const { return c_; }
  int degree() const { return c_.empty() ? -1 : static_cast<int>(c_.size()) - 1; }
  double coefficient(std::size_t i) const { return i < c_.size() ? c_[i] : 0.0; }

  double operator()(double x) const
  {
    double acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
      acc = std::fma(acc, x, *it);
    return acc;
  }

  //! Compensated Horner (Graillat, Langlois, Louvet): roughly twice the
  //! working precision, exact when the true value and all partial sums
  //! are representable.
  double eval_compensated(double x) const
  {
    if (c_.empty())
      return 0;
    double s = c_.back();
    double err = 0;
    for (std::size_t i = c_.size() - 1; i-- > 0;) {
      const double p = s * x;
      const double pe = std::fma(s, x, -p);
      const double sn = p + c_[i];
      const double bb = sn - p;
      const double se = (p - (sn - bb)) + (c_[i] - bb);
      s = sn;
      err = std::fma(err, x, pe + se);
    }
    return s + err;
  }

  Polynomial derivative() const
  {
    if (c_.size() <= 1)
      return {};
    std::vector<double> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i)
      d[i - 1] = static_cast<double>(i) * c_[i];
    return Polynomial(std::move(d));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b)
  {
    std::vector<double> r(std::max(a.c_.size(), b.c_.size()), 0.0);
    for (std::size_t i = 0; i < r.size(); ++i)
      r[i] = a.coefficient(i) + b.coefficient(i);
    return Polynomial(std::move(r));
  }

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b)
  {
    std::vector<double> r(std::max(a.c_.size(), b.c_.size()), 0.0);
    for (std::size_t i = 0; i < r.size(); ++i)
      r[i] = a.coefficient(i) - b.coefficient(i);
    return Polynomial(std::move(r));
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
  {
    if (a.c_.empty() || b.c_.empty())
      return {};
    std::vector<double> r(a.c_.size() + b.c_.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        r[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(r));
  }

  //! Quotient by (x − root); the remainder is dropped.
  Polynomial deflate(double root) const
  {
    if (c_.size() <= 1)
      return {};
    std::vector<double> q(c_.size() - 1);
    double carry = c_.back();
    for (std::size_t i = c_.size() - 1; i-- > 0;) {
      q[i] = carry;
      carry = c_[i] + carry * root;
    }
    return Polynomial(std::move(q));
  }

private:
  void trim()
  {
    while (!c_.empty() && c_.back() == 0)
      c_.pop_back();
  }

  std::vector<double> c_;
};

//! Bisection on a sign-changing bracket; returns the midpoint of the
//! final bracket.
template<class F>
double bisect(F&& f, double lo, double hi, double xtol = 0, int max_iter = 200)
{
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0)
    return lo;
  if (fhi == 0)
    return hi;
  if ((flo > 0) == (fhi > 0))
    throw NumericError("bisection bracket has no sign change");
  for (int i = 0; i < max_iter; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi || hi - lo <= xtol)
      break;
    const double fm = f(mid);
    if (fm == 0)
      return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

//! Newton steps that never leave [lo, hi]; stops on stagnation.
inline double newton_polish(const Polynomial& p, double x, double lo, double hi, int steps = 8)
{
  const Polynomial dp = p.derivative();
  for (int i = 0; i < steps; ++i) {
    const double d = dp(x);
    if (d == 0)
      break;
    const double nx = x - p.eval_compensated(x) / d;
    if (!(nx >= lo && nx <= hi) || nx == x)
      break;
    if (std::abs(p.eval_compensated(nx)) > std::abs(p.eval_compensated(x)))
      break;
    x = nx;
  }
  return x;
}

//! Real roots in [lo, hi] by a uniform sign scan, bisection and Newton
//! polish. Only odd-multiplicity roots are found.
inline std::vector<double> real_roots(const Polynomial& p, double lo, double hi, int samples = 4096)
{
  std::vector<double> roots;
  if (p.degree() < 1)
    return roots;
  double x0 = lo;
  double f0 = p.eval_compensated(x0);
  for (int i = 1; i <= samples; ++i) {
    const double x1 = lo + (hi - lo) * i / samples;
    const double f1 = p.eval_compensated(x1);
    if (f0 == 0) {
      roots.push_back(x0);
    } else if ((f0 > 0) != (f1 > 0) && f1 != 0) {
      const double r = bisect([&](double x) { return p.eval_compensated(x); }, x0, x1);
      roots.push_back(newton_polish(p, r, x0, x1));
    }
    x0 = x1;
    f0 = f1;
  }
  if (f0 == 0)
    roots.push_back(x0);
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());

  // Deflation check: once the found roots are divided out, the quotient
  // must keep one sign across the range.
  Polynomial q = p;
  for (double r : roots)
    q = q.deflate(r);
  double prev = q(lo);
  for (int i = 1; i <= samples; ++i) {
    const double v = q(lo + (hi - lo) * i / samples);
    if ((prev > 0) != (v > 0) && prev != 0 && v != 0)
      throw NumericError("deflated polynomial still changes sign");
    prev = v;
  }
  return roots;
}

} // namespace quadell
