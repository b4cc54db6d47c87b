#include <gtest/gtest.h>

#include <random>

#include "pellfib/ball.hpp"
#include "pellfib/precision.hpp"
#include "pellfib/roots.hpp"

using namespace pellfib;

namespace {

BigRat dec(const char* digits, unsigned long scale) {
  BigInt p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, scale);
  BigRat r(BigInt(digits), p);
  r.canonicalize();
  return r;
}

bool overlaps(const RealBall& x, const BigRat& lo, const BigRat& hi) {
  return x.exact_lower() <= hi && lo <= x.exact_upper();
}

bool same_bits(const RealBall& a, const RealBall& b) {
  return mpfr_equal_p(a.midpoint().get(), b.midpoint().get()) && mpfr_equal_p(a.radius().get(), b.radius().get());
}

}  // namespace

TEST(Log, OfOneIsZero) {
  const RealBall r = eval_log(RealBall::from_int(1, 128));
  EXPECT_TRUE(r.contains(BigRat(0)));
  EXPECT_LT(abs(r.exact_upper()), BigRat(1, 1000000));
}

TEST(Log, OfTwoMatchesTable) {
  // log 2 = 0.69314718055994530941723212145817656807550013436025...
  const BigRat table = dec("6931471805599453094172321214581765680755", 40);
  const BigRat slack(1, BigInt("100000000000000000000000000000000000000"));
  const RealBall r = eval_log(RealBall::from_int(2, 128));
  EXPECT_TRUE(overlaps(r, table - slack, table + slack));
  EXPECT_LT(r.exact_upper() - r.exact_lower(), BigRat(1, pow2(120)));
}

TEST(Log, RejectsNonPositive) {
  EXPECT_THROW(eval_log(RealBall::from_mid_rad(BigRat(-1, 2), BigRat(1, 10), 128)), DomainError);
  EXPECT_THROW(eval_log(RealBall::from_mid_rad(BigRat(0), BigRat(1, 10), 128)), DomainError);
}

TEST(Sqrt, ContainsExactRoot) {
  const RealBall r = eval_sqrt(RealBall::from_int(2, 200));
  // p/q brackets: lower^2 < 2 < upper^2 in exact arithmetic
  EXPECT_LT(r.exact_lower() * r.exact_lower(), BigRat(2));
  EXPECT_GT(r.exact_upper() * r.exact_upper(), BigRat(2));
}

TEST(RefineRoot, GoldenRatio) {
  const IntPoly p = IntPoly::dense({-1, -1, 1});  // x^2 - x - 1
  const BigRat target(1, BigInt("100000000000000000000"));
  const RealBall r = refine_root(p, BigRat(1), BigRat(2), target, 128);
  EXPECT_LE(to_rational(r.radius().get()), target);
  const RealBall phi = (RealBall::from_int(1, 256) + eval_sqrt(RealBall::from_int(5, 256))) / RealBall::from_int(2, 256);
  EXPECT_TRUE(overlaps(r, phi.exact_lower(), phi.exact_upper()));
  EXPECT_NEAR(r.mid_double(), 1.6180339887498949, 1e-15);
}

TEST(RefineRoot, DominantRootK4) {
  const IntPoly p = IntPoly::kbonacci_companion(4);  // x^5 - 2x^4 + 1
  const RealBall r = refine_root(p, BigRat(15, 8), BigRat(2), BigRat(BigInt(1), BigInt("10000000000")), 128);
  EXPECT_NEAR(r.mid_double(), 1.9275619754829253, 1e-10);
  EXPECT_LT(r.exact_lower(), dec("19275619755", 10));
  EXPECT_GT(r.exact_upper(), dec("19275619754", 10));
}

TEST(RefineRoot, NoSignChangeIsBracketError) {
  const IntPoly p = IntPoly::dense({-4, 0, 1});
  EXPECT_THROW(refine_root(p, BigRat(1), BigRat(3, 2), BigRat(1, 1000), 128), BracketError);
}

TEST(RefineRoot, UnreachableRadiusSignalsEscalation) {
  const IntPoly p = IntPoly::dense({-2, 0, 1});
  EXPECT_THROW(refine_root(p, BigRat(1), BigRat(2), BigRat(1, pow2(500)), 64), PrecisionEscalation);
}

TEST(RefineRoot, HalvingTargetNests) {
  const IntPoly p = IntPoly::kbonacci_companion(7);
  const BigRat lo = BigRat(2) * (BigRat(1) - BigRat(1, pow2(7))), hi = 2;
  for (unsigned e = 20; e < 200; e += 30) {
    const RealBall wide = refine_root(p, lo, hi, BigRat(1, pow2(e)), 400);
    const RealBall narrow = refine_root(p, lo, hi, BigRat(1, pow2(e + 1)), 400);
    EXPECT_TRUE(wide.contains(narrow)) << "target 2^-" << e;
  }
}

TEST(NearestDistance, Examples) {
  auto d = certified_nearest_distance(RealBall::from_rational(BigRat(9, 4), 128));
  EXPECT_FALSE(d.ambiguous);
  EXPECT_TRUE(d.distance.contains(BigRat(1, 4)));
  EXPECT_TRUE(d.distance.is_exact());

  d = certified_nearest_distance(RealBall::from_int(7, 128));
  EXPECT_FALSE(d.ambiguous);
  EXPECT_TRUE(d.distance.contains(BigRat(0)));

  d = certified_nearest_distance(RealBall::from_rational_endpoints(dec("24999", 4), dec("25001", 4), 128));
  EXPECT_TRUE(d.ambiguous);
  EXPECT_TRUE(d.distance.contains(BigRat(0)));
  EXPECT_TRUE(d.distance.contains(BigRat(1, 2)));
}

TEST(NearestDistance, NegativeArguments) {
  const auto d = certified_nearest_distance(RealBall::from_rational(BigRat(-13, 4), 128));
  EXPECT_FALSE(d.ambiguous);
  EXPECT_TRUE(d.distance.contains(BigRat(1, 4)));
}

TEST(CertifiedFloor, StraddleGivesNothing) {
  EXPECT_EQ(certified_floor(RealBall::from_rational(BigRat(7, 2), 64)), BigInt(3));
  EXPECT_FALSE(certified_floor(RealBall::from_rational_endpoints(BigRat(29, 10), BigRat(31, 10), 64)).has_value());
  EXPECT_EQ(certified_floor(RealBall::from_rational(BigRat(-1, 3), 64)), BigInt(-1));
}

TEST(Ball, RoundTripsRationalsOutward) {
  const BigRat third(1, 3);
  const RealBall b = RealBall::from_rational(third, 64);
  EXPECT_TRUE(b.contains(third));
  EXPECT_FALSE(b.is_exact());
  EXPECT_TRUE(RealBall::from_rational(BigRat(5, 8), 64).is_exact());
}

TEST(Ball, DivisionByBallContainingZeroThrows) {
  const RealBall z = RealBall::from_mid_rad(BigRat(0), BigRat(1, 100), 64);
  EXPECT_THROW(RealBall::from_int(1, 64) / z, DomainError);
}

TEST(Ball, PowerSignCases) {
  const RealBall m = RealBall::from_rational(BigRat(-3, 2), 128);
  EXPECT_TRUE(eval_pow(m, 3).contains(BigRat(-27, 8)));
  EXPECT_TRUE(eval_pow(m, 2).contains(BigRat(9, 4)));
  const RealBall s = RealBall::from_mid_rad(BigRat(0), BigRat(1, 2), 128);
  EXPECT_TRUE(eval_pow(s, 2).contains(BigRat(1, 4)));
  EXPECT_TRUE(eval_pow(s, 3).contains(BigRat(-1, 8)));
  EXPECT_TRUE(eval_pow(m, 0).is_exact());
}

TEST(Ball, ExpAndRootInvertLogAndPower) {
  const RealBall x = RealBall::from_rational(BigRat(17, 5), 256);
  const RealBall back = eval_exp(eval_log(x));
  EXPECT_TRUE(back.contains(BigRat(17, 5)));
  EXPECT_TRUE(eval_root(eval_pow(x, 7), 7).contains(BigRat(17, 5)));
}

// Balls at 512 bits sit inside the balls at 64 bits for the same inputs.
TEST(BallProperty, HighPrecisionNestsInLowPrecision) {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<long> num(-1000000, 1000000), den(1, 1000000);
  auto random_rat = [&](bool positive) {
    long n = num(rng);
    if (positive) n = std::labs(n) + 1;
    BigRat r(BigInt(n), BigInt(2 * den(rng) + 1));
    r.canonicalize();
    return r;
  };
  for (int i = 0; i < 10000; ++i) {
    const BigRat a = random_rat(false), b = random_rat(false), c = random_rat(true);
    const RealBall a64 = RealBall::from_rational(a, 64), b64 = RealBall::from_rational(b, 64);
    const RealBall a512 = RealBall::from_rational(a, 512), b512 = RealBall::from_rational(b, 512);
    const RealBall c64 = RealBall::from_rational(c, 64), c512 = RealBall::from_rational(c, 512);
    ASSERT_TRUE((a64 + b64).contains(a512 + b512)) << i;
    ASSERT_TRUE((a64 * b64).contains(a512 * b512)) << i;
    ASSERT_TRUE(eval_log(c64).contains(eval_log(c512))) << i;
    ASSERT_TRUE(eval_sqrt(c64).contains(eval_sqrt(c512))) << i;
    ASSERT_TRUE((a64 + b64).contains(a + b));
    ASSERT_TRUE((a64 * b64).contains(a * b));
  }
}

TEST(BallProperty, Deterministic) {
  const IntPoly p = IntPoly::kbonacci_companion(11);
  const BigRat lo = BigRat(2) * (BigRat(1) - BigRat(1, pow2(11))), hi = 2;
  const RealBall r1 = refine_root(p, lo, hi, BigRat(1, pow2(300)), 350);
  const RealBall r2 = refine_root(p, lo, hi, BigRat(1, pow2(300)), 350);
  EXPECT_TRUE(same_bits(r1, r2));
  EXPECT_TRUE(same_bits(eval_log(r1), eval_log(r2)));
}

TEST(Escalation, DoublesUntilAccepted) {
  std::vector<Precision> seen;
  const Precision got = escalate(PrecisionPolicy{}, [&](Precision p) {
    seen.push_back(p);
    if (p < 1400) throw PrecisionEscalation("more");
    return p;
  });
  EXPECT_EQ(got, 1400);
  EXPECT_EQ(seen, (std::vector<Precision>{350, 700, 1400}));
}

TEST(Escalation, CapExceeded) {
  EXPECT_THROW(escalate(PrecisionPolicy{350, 1000, true},
                        [](Precision) -> int { throw PrecisionEscalation("never"); }),
               PrecisionCapExceeded);
}

TEST(Escalation, DualCheckRejectsDisagreement) {
  // Stabilises from 1400 on: 700 disagrees with 1400, 1400 agrees with 2800.
  Precision accepted = 0;
  const long v = escalate_certified(
      PrecisionPolicy{}, [](Precision p) { return p >= 1400 ? 7L : static_cast<long>(p); }, &accepted);
  EXPECT_EQ(v, 7);
  EXPECT_EQ(accepted, 1400);
}
