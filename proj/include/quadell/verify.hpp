#pragma once

//! @file
//! Randomized property sweeps shared by the CLI and the test suite.

#include <quadell/inscribed.hpp>
#include <quadell/min_area.hpp>
#include <quadell/min_ecc.hpp>
#include <quadell/oracle.hpp>
#include <quadell/random.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace quadell {

struct TrialOutcome
{
  bool ok = true;
  double metric = 0;        //!< the quantity the sweep reduces (worst case)
  std::string instance;     //!< human-readable reproduction data
};

struct SweepSummary
{
  std::string suite;
  std::uint64_t seed = 0;
  int trials = 0;
  int failures = 0;
  double worst = 0;
  std::optional<int> first_failure; //!< smallest failing trial index
  std::string first_failure_instance;
};

//! Runs `trial(seed, index)` for every index on up to `threads` workers.
//! Outcomes are stored per index and reduced afterwards, so the summary does
//! not depend on scheduling. `larger_is_worse` picks max or min reduction.
inline SweepSummary run_sweep(const std::string& suite, std::uint64_t seed, int trials,
                              const std::function<TrialOutcome(std::uint64_t, int)>& trial,
                              bool larger_is_worse = true, unsigned threads = 0)
{
  if (threads == 0)
    threads = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  std::vector<TrialOutcome> out(static_cast<std::size_t>(std::max(trials, 0)));
  const auto work = [&](unsigned tid) {
    for (int i = static_cast<int>(tid); i < trials; i += static_cast<int>(threads)) {
      try {
        out[static_cast<std::size_t>(i)] = trial(seed, i);
      } catch (const std::exception& e) {
        out[static_cast<std::size_t>(i)] = {false, std::nan(""), std::string("exception: ") + e.what()};
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t)
    pool.emplace_back(work, t);
  work(0);
  for (auto& th : pool)
    th.join();

  SweepSummary s;
  s.suite = suite;
  s.seed = seed;
  s.trials = trials;
  s.worst = larger_is_worse ? 0 : std::numeric_limits<double>::infinity();
  for (int i = 0; i < trials; ++i) {
    const TrialOutcome& o = out[static_cast<std::size_t>(i)];
    if (std::isfinite(o.metric))
      s.worst = larger_is_worse ? std::max(s.worst, o.metric) : std::min(s.worst, o.metric);
    if (!o.ok) {
      ++s.failures;
      if (!s.first_failure) {
        s.first_failure = i;
        s.first_failure_instance = o.instance;
      }
    }
  }
  return s;
}

namespace detail {

inline std::string describe(const ConvexQuadrilateral& q)
{
  std::string s = "[";
  char buf[64];
  for (int i = 0; i < 4; ++i) {
    std::snprintf(buf, sizeof buf, "%s[%.17g, %.17g]", i ? ", " : "", q[i].x(), q[i].y());
    s += buf;
  }
  return s + "]";
}

//! Random parameter strictly inside an open interval, log-spread when the
//! interval is unbounded above.
inline double sample_interval(Rng& rng, const Interval& iv)
{
  if (iv.bounded())
    return iv.lo + (iv.hi - iv.lo) * uniform(rng, 0.001, 0.999);
  const double base = std::abs(iv.lo) + 1;
  return iv.lo + base * std::exp(uniform(rng, std::log(1e-3), std::log(1e3)));
}

} // namespace detail

//! Random quadrilateral for the center-separation sweep: one in five is an
//! affine image of a trapezoid.
inline ConvexQuadrilateral center_separation_quad(Rng& rng, int index)
{
  if (index % 5 == 4) {
    double t = 1;
    while (std::abs(t - 1) < 0.1)
      t = uniform(rng, 0.2, 5);
    return map_quad(canonical_trapezoid(t), random_affine(rng));
  }
  return random_convex_quad(rng);
}

//! No member of the circumscribed pencil is centered inside Z.
inline TrialOutcome center_separation_trial(std::uint64_t seed, int index)
{
  Rng rng = trial_rng(seed, static_cast<std::uint64_t>(index));
  const ConvexQuadrilateral q = center_separation_quad(rng, index);
  const CanonicalQuad canon = canonicalize(q);
  const Interval iv = canon.kind == CanonicalQuad::Kind::GeneralST
                        ? CanonicalPencilData{canon.s, canon.t}.interval()
                        : Pencil::trapezoid(canon.t).interval();
  const double u = detail::sample_interval(rng, iv);
  const CenterSeparation sep = inscribed_center_separation(q, u);
  TrialOutcome o;
  o.metric = sep.distance / q.diameter();
  o.ok = !sep.interior && sep.distance > 0;
  char buf[64];
  std::snprintf(buf, sizeof buf, ", u = %.17g", u);
  o.instance = "vertices " + detail::describe(q) + buf;
  return o;
}

//! Every frame member shares the conjugate pair (M1, M2), and the equal
//! conjugate diameters of the optimal member lie along it.
inline TrialOutcome conjugacy_trial(std::uint64_t seed, int index, int members = 20)
{
  Rng rng = trial_rng(seed, static_cast<std::uint64_t>(index));
  const SteinerFrame f = random_frame(rng);
  const ConjugateDirections cd = common_conjugate_directions(f);
  const Pencil pencil = Pencil::frame(f);
  const Interval iv = pencil.interval();
  double worst = 0;
  for (int j = 0; j < members; ++j) {
    const double v = iv.lo + (iv.hi - iv.lo) * (j + 0.5) / members;
    const double m = conjugate_slope(pencil.member(v), cd.M1);
    worst = std::max(worst, std::abs(m - cd.M2) / std::max(1.0, std::abs(cd.M2)));
  }
  const SteinerSolution sol = min_ecc_frame_solution(f);
  const auto [e1, e2] = equal_conjugate_directions(sol, ellipse_geometry(pencil.member(sol.v0)));
  worst = std::max(worst, std::abs(e1 - cd.M1) / std::max(1.0, std::abs(cd.M1)));
  worst = std::max(worst, std::abs(e2 - cd.M2) / std::max(1.0, std::abs(cd.M2)));
  TrialOutcome o;
  o.metric = worst;
  o.ok = worst < 1e-9;
  char buf[160];
  std::snprintf(buf, sizeof buf, "h = %.17g, k = %.17g, p = %.17g, q = %.17g", f.h, f.k, f.p, f.q);
  o.instance = buf;
  return o;
}

//! Closed-form extraction against the eigen-decomposition oracle.
inline TrialOutcome oracle_trial(std::uint64_t seed, int index)
{
  Rng rng = trial_rng(seed, static_cast<std::uint64_t>(index));
  const Conic c = random_ellipse_conic(rng);
  const EllipseGeometry g = ellipse_geometry(c);
  const EllipseGeometry o = eigen_geometry(c);
  const double err = std::max({std::abs(g.a - o.a) / o.a, std::abs(g.b - o.b) / o.b,
                               (g.center - o.center).norm() / std::max(o.center.norm(), o.a),
                               angle_gap(g.phi, o.phi)});
  TrialOutcome out;
  out.metric = err;
  out.ok = err < 1e-10;
  char buf[200];
  std::snprintf(buf, sizeof buf, "A=%.17g B=%.17g C=%.17g D=%.17g E=%.17g F=%.17g", c.A, c.B, c.C,
                c.D, c.E, c.F);
  out.instance = buf;
  return out;
}

struct ConjectureProbe
{
  int which = 1;
  int trials = 0;
  int inside = 0;
  int outside = 0;
  int errors = 0;
  std::vector<std::string> candidates; //!< up to ten outside instances, for inspection
};

//! Samples random convex quadrilaterals and checks whether the center of the
//! least eccentric (which = 1) or least area (which = 2) circumscribed ellipse
//! lies inside. Counts are reported; nothing is asserted.
inline ConjectureProbe conjecture_probe(int which, int trials, std::uint64_t seed)
{
  ConjectureProbe p;
  p.which = which;
  p.trials = trials;
  const auto trial = [which](std::uint64_t sd, int i) {
    Rng rng = trial_rng(sd, static_cast<std::uint64_t>(i));
    const ConvexQuadrilateral q = random_convex_quad(rng);
    const ExtremalEllipse e = which == 1 ? min_ecc_circumscribed(q) : min_area_circumscribed(q);
    TrialOutcome o;
    o.ok = q.contains(e.geometry.center);
    o.metric = o.ok ? 1 : 0;
    o.instance = "trial " + std::to_string(i) + ": vertices " + detail::describe(q);
    return o;
  };
  std::vector<TrialOutcome> all(static_cast<std::size_t>(trials));
  for (int i = 0; i < trials; ++i) {
    try {
      all[static_cast<std::size_t>(i)] = trial(seed, i);
    } catch (const std::exception& e) {
      all[static_cast<std::size_t>(i)] = {false, std::nan(""), e.what()};
    }
  }
  for (const auto& o : all) {
    if (std::isnan(o.metric))
      ++p.errors;
    else if (o.ok)
      ++p.inside;
    else {
      ++p.outside;
      if (p.candidates.size() < 10)
        p.candidates.push_back(o.instance);
    }
  }
  return p;
}

} // namespace quadell
