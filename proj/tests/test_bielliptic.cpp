#include "support.hpp"

#include <quadell/bielliptic.hpp>

#include <chrono>

using namespace quadell;
using namespace quadell::testing;

TEST(Classify, TangentialEnd)
{
  const BiellipticReport r = classify_bielliptic(canonical_quad(2, 2));
  EXPECT_LT(r.ecc_inscribed, 1e-8);
  EXPECT_GT(r.ecc_circumscribed, 0.1);
  EXPECT_FALSE(r.tau);
  EXPECT_TRUE(r.tangential);
  EXPECT_FALSE(r.cyclic);
}

TEST(Classify, CyclicEnd)
{
  const BiellipticReport r = classify_bielliptic(cyclic_example());
  EXPECT_LT(r.ecc_circumscribed, 1e-8);
  EXPECT_GT(r.ecc_inscribed, 0.1);
  EXPECT_FALSE(r.tau);
  EXPECT_TRUE(r.cyclic);
}

TEST(Classify, QuotedTrapezoidIsNotBielliptic)
{
  // The inscribed minimum here is 0.591071, well below the circumscribed 0.690126.
  const BiellipticReport r = classify_bielliptic(canonical_trapezoid(1.658119));
  EXPECT_NEAR(r.ecc_circumscribed, 0.69013, 1e-5);
  EXPECT_NEAR(r.ecc_inscribed, 0.591071, 1e-6);
  EXPECT_FALSE(r.tau);
}

TEST(Classify, FamilyRootIsBielliptic)
{
  const FamilySearchResult f = find_bielliptic_in_family();
  const BiellipticReport r = classify_bielliptic(family_member(f.r0).quad);
  ASSERT_TRUE(r.tau);
  EXPECT_NEAR(*r.tau, f.tau, 1e-9);
  EXPECT_FALSE(r.cyclic);
  EXPECT_FALSE(r.tangential);
}

TEST(Family, Endpoints)
{
  const FamilyMember a = family_member(0);
  EXPECT_EQ(a.s, 2);
  EXPECT_EQ(a.t, 2);
  EXPECT_TRUE(a.tangential);
  const FamilyMember b = family_member(1);
  EXPECT_NEAR(b.s, 0.5, 1e-15);
  EXPECT_NEAR(b.t, (1 + sqrt2) / 2, 1e-15);
  EXPECT_NEAR(b.t, 1.207, 1e-3);
  EXPECT_TRUE(b.cyclic);
}

TEST(Family, TrapezoidMember)
{
  const FamilyMember m = family_member(2.0 / 3);
  EXPECT_EQ(m.s, 1);
  EXPECT_TRUE(m.trapezoid);
  EXPECT_NEAR(m.t, 1 + sqrt2 / 3, 1e-15);
}

TEST(Family, FactoredCircleCondition)
{
  for (int i = 0; i <= 100; ++i)
    ASSERT_NEAR(family_member(i / 100.0).factorization_residual, 0, 1e-12);
  EXPECT_THROW(family_member(1.5), DomainError);
}

TEST(Family, EndpointSigns)
{
  const FamilyEccentricities e0 = family_eccentricities(0);
  const FamilyEccentricities e1 = family_eccentricities(1);
  EXPECT_LT(e0.ecc_inscribed, 1e-8);
  EXPECT_GT(e0.ecc_circumscribed, 0);
  EXPECT_LT(e0.delta(), 0);
  EXPECT_GT(e1.ecc_inscribed, 0);
  EXPECT_LT(e1.ecc_circumscribed, 1e-8);
  EXPECT_GT(e1.delta(), 0);
}

TEST(Family, SearchRegressionPin)
{
  const auto start = std::chrono::steady_clock::now();
  const FamilySearchResult f = find_bielliptic_in_family();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_NEAR(f.r0, 0.721927666309, 1e-9);
  EXPECT_NEAR(f.tau, 0.574225806152, 1e-9);
  EXPECT_LT(std::abs(f.ecc_inscribed - f.ecc_circumscribed), 1e-9);
  EXPECT_GT(f.r0, 0);
  EXPECT_LT(f.r0, 1);
  EXPECT_FALSE(f.cyclic);
  EXPECT_FALSE(f.tangential);
  EXPECT_EQ(f.roots.size(), 1u);
  EXPECT_LT(secs, 10);
}

TEST(PolyP, Values)
{
  EXPECT_EQ(poly_p_value(1), 64);
  EXPECT_EQ(poly_p_value(0), 21);
  EXPECT_EQ(poly_p_value(1.5), -23.0771484375);
  EXPECT_NEAR(poly_p_value(1.5), -23.07715, 1e-4);
}

TEST(PolyP, RealRoots)
{
  const std::vector<double> r = poly_p_real_roots();
  ASSERT_EQ(r.size(), 3u);
  EXPECT_NEAR(r[0], -0.8295535, 1e-6);
  EXPECT_NEAR(r[1], 1.232267, 1e-6);
  EXPECT_NEAR(r[2], 1.778672, 1e-6);
  for (double x : r)
    EXPECT_LT(std::abs(poly_p_value(x)), 1e-9);
}

TEST(TrapezoidSystem, QuotedValues)
{
  const TrapezoidBiellipticSolution s = trapezoid_bielliptic_solve();
  EXPECT_NEAR(s.rho, 1.232267, 1e-5);
  EXPECT_NEAR(s.t, 1.658119, 1e-4);
  EXPECT_NEAR(s.k, 0.6161335, 1e-4);
  // Regression pin; the quoted t is about 2e-6 low.
  EXPECT_NEAR(s.t, 1.6581207941, 1e-9);
  EXPECT_NEAR(s.k, 0.6161336644, 1e-9);
  EXPECT_NEAR(s.k, s.rho / 2, 1e-12);
  EXPECT_NEAR(s.tau, 0.69013, 1e-5);
  EXPECT_LT(s.residual_cubic, 1e-12);
  EXPECT_LT(s.residual_equation, 1e-12);
}

TEST(TrapezoidSystem, BothSidesOfTheVariantSystemAgree)
{
  const TrapezoidBiellipticSolution s = trapezoid_bielliptic_solve();
  EXPECT_NEAR(s.tau_variant, s.tau, 1e-12);
  // The geometric inscribed minimum at the same t does not.
  EXPECT_NEAR(s.ecc_inscribed, 0.591071352830, 1e-9);
  EXPECT_NEAR(trapezoid_circum_ecc_sq(s.t), s.tau * s.tau, 1e-15);
}

TEST(TrapezoidSystem, RootIsCubicRootAtThatT)
{
  const TrapezoidBiellipticSolution s = trapezoid_bielliptic_solve();
  EXPECT_NEAR(solve_trapezoid_inscribed(s.t).k0, s.k, 1e-12);
}
