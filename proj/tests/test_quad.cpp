#include "support.hpp"

#include <quadell/random.hpp>

using namespace quadell;
using namespace quadell::testing;

TEST(Validate, ShapeTags)
{
  EXPECT_EQ(square().shape, QuadShape::Parallelogram);
  EXPECT_EQ(quad({Point(0, 0), Point(1, 0), Point(1, 2), Point(0, 1)}).shape, QuadShape::Trapezoid);
  EXPECT_EQ(quad({Point(0, 0), Point(1, 0), Point(2, 2), Point(0, 1)}).shape, QuadShape::General);
}

TEST(Validate, NamesTheFailedPredicate)
{
  const auto predicate = [](std::array<Point, 4> v) {
    try {
      validate(v);
    } catch (const ValidationError& e) {
      return e.predicate();
    }
    return std::string("none");
  };
  EXPECT_EQ(predicate({Point(0, 0), Point(1, 0), Point(0, 0), Point(0, 1)}), "distinct");
  EXPECT_EQ(predicate({Point(0, 0), Point(1, 0), Point(2, 0), Point(0, 1)}), "collinear");
  EXPECT_EQ(predicate({Point(0, 0), Point(2, 0), Point(0.5, 0.5), Point(0, 2)}), "convex");
  EXPECT_EQ(predicate({Point(0, 0), Point(1, 1), Point(1, 0), Point(0, 1)}), "simple");
  EXPECT_EQ(predicate({Point(0, 0), Point(NAN, 0), Point(1, 1), Point(0, 1)}), "finite");
}

TEST(Validate, ClockwiseInputIsReoriented)
{
  const ConvexQuadrilateral q = quad({Point(0, 0), Point(0, 1), Point(2, 2), Point(1, 0)});
  for (int i = 0; i < 4; ++i)
    EXPECT_GT(cross(q.edge(i), q.edge(i + 1)), 0);
  EXPECT_EQ(q[0], Point(0, 0));
}

TEST(Validate, VertexSetIsSortedByAngle)
{
  const ConvexQuadrilateral q = from_vertex_set({Point(0, 0), Point(1, 0), Point(0, 1), Point(2, 2)});
  EXPECT_EQ(q[0], Point(0, 0));
  EXPECT_EQ(q[1], Point(1, 0));
  EXPECT_EQ(q[2], Point(2, 2));
  EXPECT_EQ(q[3], Point(0, 1));
}

TEST(Canonicalize, AlreadyCanonical)
{
  const CanonicalQuad c = canonicalize(quad({Point(0, 0), Point(1, 0), Point(2, 2), Point(0, 1)}));
  EXPECT_EQ(c.kind, CanonicalQuad::Kind::GeneralST);
  EXPECT_NEAR(c.s, 2, 1e-15);
  EXPECT_NEAR(c.t, 2, 1e-15);
  EXPECT_NEAR((c.to_canonical.linear() - Eigen::Matrix2d::Identity()).norm(), 0, 1e-15);
  EXPECT_NEAR(c.to_canonical.translation().norm(), 0, 1e-15);
}

TEST(Canonicalize, UniformScale)
{
  const CanonicalQuad c = canonicalize(quad({Point(0, 0), Point(2, 0), Point(4, 4), Point(0, 2)}));
  EXPECT_NEAR(c.s, 2, 1e-15);
  EXPECT_NEAR(c.t, 2, 1e-15);
  EXPECT_NEAR(c.to_canonical.det(), 0.25, 1e-15);
}

TEST(Canonicalize, Trapezoid)
{
  const CanonicalQuad c = canonicalize(quad({Point(0, 0), Point(1, 0), Point(1, 3), Point(0, 1)}));
  EXPECT_EQ(c.kind, CanonicalQuad::Kind::TrapezoidT);
  EXPECT_EQ(c.s, 1);
  EXPECT_NEAR(c.t, 3, 1e-15);
}

TEST(Canonicalize, ParallelogramUnsupported)
{
  EXPECT_THROW(canonicalize(square()), UnsupportedShapeError);
}

TEST(Canonicalize, MapSendsVerticesToCanonicalPositions)
{
  for (int i = 0; i < 200; ++i) {
    Rng rng = trial_rng(21, i);
    const ConvexQuadrilateral q = random_convex_quad(rng);
    const CanonicalQuad c = canonicalize(q);
    ASSERT_GT(c.s + c.t, 1);
    const auto& m = c.to_canonical;
    ASSERT_NEAR((m(q[c.roles.O]) - Point(0, 0)).norm(), 0, 1e-10);
    ASSERT_NEAR((m(q[c.roles.P]) - Point(1, 0)).norm(), 0, 1e-10);
    ASSERT_NEAR((m(q[c.roles.Q]) - Point(0, 1)).norm(), 0, 1e-10);
    ASSERT_NEAR((m(q[c.roles.R]) - Point(c.s, c.t)).norm(), 0, 1e-10);
  }
}

TEST(DiagonalSegment, CanonicalGeneral)
{
  const SegmentZ z = diagonal_segment(canonical_quad(2, 3));
  EXPECT_NEAR((z.m1 - Point(1, 1.5)).norm(), 0, 1e-15);
  EXPECT_NEAR((z.m2 - Point(0.5, 0.5)).norm(), 0, 1e-15);
  // Supporting line y = (4x − 1)/2.
  for (const Point& p : {z.m1, z.m2})
    EXPECT_NEAR(p.y(), 0.5 * (4 * p.x() - 1), 1e-15);
}

TEST(DiagonalSegment, CanonicalTrapezoid)
{
  const SegmentZ z = diagonal_segment(canonical_trapezoid(3));
  EXPECT_NEAR(z.m1.x(), 0.5, 1e-15);
  EXPECT_NEAR(z.m2.x(), 0.5, 1e-15);
  EXPECT_NEAR(std::min(z.m1.y(), z.m2.y()), 0.5, 1e-15);
  EXPECT_NEAR(std::max(z.m1.y(), z.m2.y()), 1.5, 1e-15);
  EXPECT_TRUE(z.interior(Point(0.5, 1.0)));
  EXPECT_FALSE(z.interior(Point(0.5, 1.5)));
}

TEST(DiagonalSegment, SquareIsDegenerate)
{
  EXPECT_TRUE(diagonal_segment(square()).degenerate());
}

TEST(CircleTests, CyclicFamilyEnd)
{
  const ConvexQuadrilateral q = cyclic_example();
  EXPECT_TRUE(is_cyclic(q));
  EXPECT_FALSE(is_tangential(q));
  const EllipseGeometry c = circumcircle(q);
  EXPECT_NEAR((c.center - Point(0.5, 0.5)).norm(), 0, 1e-12);
  EXPECT_NEAR(c.a, sqrt2 / 2, 1e-12);
}

TEST(CircleTests, TangentialFamilyEnd)
{
  const ConvexQuadrilateral q = canonical_quad(2, 2);
  EXPECT_TRUE(is_tangential(q));
  EXPECT_FALSE(is_cyclic(q));
  const EllipseGeometry c = incircle(q);
  for (int i = 0; i < 4; ++i) {
    const Point d = q.edge(i);
    const double dist = std::abs(cross(d, c.center - q[i])) / d.norm();
    EXPECT_NEAR(dist, c.a, 1e-12);
  }
}

TEST(CircleTests, SquareIsBicentric)
{
  EXPECT_TRUE(is_cyclic(square()));
  EXPECT_TRUE(is_tangential(square()));
}

TEST(CircleTests, RandomCyclicAndTangential)
{
  for (int i = 0; i < 100; ++i) {
    Rng rng = trial_rng(22, i);
    ASSERT_TRUE(is_cyclic(random_cyclic_quad(rng)));
    ASSERT_TRUE(is_tangential(random_tangential_quad(rng)));
  }
}

TEST(SteinerFrame, SymmetricInstance)
{
  const SteinerFrame f = make_frame(2, 2, 1, 1);
  const ConvexQuadrilateral q = frame_quad(f);
  const SteinerFrame g = steiner_frame(q);
  EXPECT_NEAR(g.p, 1, 1e-14);
  EXPECT_NEAR(g.q, 1, 1e-14);
  EXPECT_NEAR(g.h, 2, 1e-14);
  EXPECT_NEAR(g.k, 2, 1e-14);
  EXPECT_GT(g.k * g.h - g.p * g.q, 0);
}

TEST(SteinerFrame, LineIntersectionsGiveHK)
{
  // QR meets the x axis at H, PR meets the y axis at K.
  const Point R(0.8, 0.9);
  const ConvexQuadrilateral q = quad({Point(0, 0), Point(1, 0), R, Point(0, 1)});
  const SteinerFrame f = steiner_frame(q);
  const double h = R.x() / (1 - R.y()); // from Q=(0,1) through R
  const double k = R.y() / (1 - R.x()); // from P=(1,0) through R
  EXPECT_NEAR(f.p, 1, 1e-14);
  EXPECT_NEAR(f.q, 1, 1e-14);
  EXPECT_NEAR(f.h, h, 1e-12);
  EXPECT_NEAR(f.k, k, 1e-12);
  EXPECT_NEAR(f.h, 8, 1e-12);
  EXPECT_NEAR(f.k, 4.5, 1e-12);
}

TEST(SteinerFrame, OppositeVertexBeyondTheBoxHasNoFrame)
{
  const ConvexQuadrilateral q = quad({Point(0, 0), Point(1, 0), Point(1.2, 1.1), Point(0, 1)});
  EXPECT_FALSE(try_steiner_frame(q));
  EXPECT_THROW(steiner_frame(q), FrameUnavailableError);
}

TEST(SteinerFrame, NoRightAngle)
{
  const ConvexQuadrilateral q = quad({Point(0, 0), Point(1, 0.1), Point(2, 2), Point(-0.1, 1)});
  EXPECT_THROW(steiner_frame(q), FrameUnavailableError);
}

TEST(SteinerFrame, RecoveredFromRigidMotion)
{
  for (int i = 0; i < 50; ++i) {
    Rng rng = trial_rng(23, i);
    const SteinerFrame f = random_frame(rng);
    const AffineMap motion =
      compose(AffineMap::translation(Eigen::Vector2d(uniform(rng, -3, 3), uniform(rng, -3, 3))),
              AffineMap::rotation(uniform(rng, 0, 2 * pi)));
    const SteinerFrame g = steiner_frame(map_quad(frame_quad(f), motion));
    ASSERT_NEAR(g.h, f.h, 1e-9 * f.h);
    ASSERT_NEAR(g.k, f.k, 1e-9 * f.k);
    ASSERT_NEAR(g.p, f.p, 1e-9 * f.p);
    ASSERT_NEAR(g.q, f.q, 1e-9 * f.q);
  }
}

TEST(RightTrapezoid, MatchesIsometricCopies)
{
  const ConvexQuadrilateral base = canonical_trapezoid(1.7);
  const AffineMap motion = compose(AffineMap::translation(Eigen::Vector2d(2, -1)), AffineMap::rotation(0.4));
  const auto m = match_right_trapezoid(map_quad(base, motion));
  ASSERT_TRUE(m);
  EXPECT_NEAR(m->t, 1.7, 1e-12);
  const auto mirrored = match_right_trapezoid(map_quad(base, AffineMap::scaling(-1, 1)));
  ASSERT_TRUE(mirrored);
  EXPECT_NEAR(mirrored->t, 1.7, 1e-12);
  EXPECT_FALSE(match_right_trapezoid(map_quad(base, AffineMap::scaling(2, 1))));
}
