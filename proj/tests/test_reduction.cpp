#include <gtest/gtest.h>

#include <random>

#include "pellfib/reduction.hpp"

using namespace pellfib;

namespace {

RealProducer sqrt_of(long n) {
  return [n](Precision p) { return eval_sqrt(RealBall::from_int(n, p)); };
}

RealProducer golden() {
  return [](Precision p) {
    return (RealBall::from_int(1, p) + eval_sqrt(RealBall::from_int(5, p))) / RealBall::from_int(2, p);
  };
}

std::vector<BigInt> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

}  // namespace

TEST(CfExpand, QuadraticIrrationals) {
  CFExpansion cf = cf_expand(sqrt_of(2), 20);
  ASSERT_EQ(cf.certified_depth(), 20);
  EXPECT_EQ(cf.quotients[0], 1);
  for (long j = 1; j <= 20; ++j) EXPECT_EQ(cf.quotients[static_cast<std::size_t>(j)], 2);

  cf = cf_expand(golden(), 60);
  for (const BigInt& a : cf.quotients) EXPECT_EQ(a, 1);
  EXPECT_EQ(cf.q[59], kfib(2, 60));
}

TEST(CfExpand, DyadicRationalTerminates) {
  const CFExpansion cf = cf_expand(constant_producer(BigRat(45, 16)), 10);
  EXPECT_TRUE(cf.terminated);
  EXPECT_EQ(cf.quotients, ints({2, 1, 4, 3}));
  EXPECT_EQ(cf.convergent(3), BigRat(45, 16));
}

// A ball never pins down a non-dyadic rational, so the last term stays uncertified.
TEST(CfExpand, OtherRationalsExhaustTheLadder) {
  EXPECT_THROW(cf_expand(constant_producer(BigRat(415, 93)), 10), PrecisionCapExceeded);
}

TEST(CfExpand, DeterminantIdentity) {
  const CFExpansion cf = cf_expand(chi_producer(7), 120);
  for (std::size_t j = 1; j < cf.q.size(); ++j) {
    const BigInt det = cf.p[j] * cf.q[j - 1] - cf.p[j - 1] * cf.q[j];
    ASSERT_EQ(det, (j % 2 == 1) ? 1 : -1) << j;
  }
}

TEST(Chi, KnownValues) {
  EXPECT_NEAR(chi_producer(2)(128).mid_double(), 0.768144152228, 1e-12);
  const CFExpansion cf = cf_expand(chi_producer(4), 10);
  EXPECT_EQ(cf.quotients, ints({0, 5, 3, 1, 2, 1, 6, 1, 3, 1, 17}));
}

TEST(CertifiedPrefix, StopsWhereEndpointsDisagree) {
  // [1.4142, 1.4143] shares only a short prefix with sqrt 2.
  const RealBall b = RealBall::from_rational_endpoints(BigRat(14142, 10000), BigRat(14143, 10000), 64);
  const CertifiedPrefix pre = certified_cf_prefix(b, 50);
  EXPECT_FALSE(pre.terminated);
  EXPECT_LT(pre.quotients.size(), 8u);
  for (std::size_t j = 1; j < pre.quotients.size(); ++j) EXPECT_EQ(pre.quotients[j], 2);
}

TEST(Legendre, Examples) {
  const RealProducer pi = [](Precision p) { return RealBall::pi(p); };
  EXPECT_EQ(legendre_locate(pi, BigInt(22), BigInt(7)), 1);
  EXPECT_EQ(legendre_locate(pi, BigInt(355), BigInt(113)), 3);
  EXPECT_EQ(legendre_locate(sqrt_of(2), BigInt(3), BigInt(2)), 1);
  EXPECT_FALSE(legendre_locate(sqrt_of(2), BigInt(4), BigInt(3)).has_value());
  EXPECT_THROW(legendre_locate(sqrt_of(2), BigInt(1), BigInt(0)), DomainError);
}

TEST(DujellaPetho, RejectsDegenerateInstances) {
  ReductionInstance inst{sqrt_of(2), constant_producer(BigRat(0)), constant_producer(BigRat(10)),
                         constant_producer(BigRat(2)), BigInt(100)};
  EXPECT_THROW(dujella_petho(inst, 0), DomainError);
  inst.mu = constant_producer(BigRat(1, 3));
  inst.B = constant_producer(BigRat(1));
  EXPECT_THROW(dujella_petho(inst, 0), DomainError);
  inst.B = constant_producer(BigRat(2));
  inst.M = 0;
  EXPECT_THROW(dujella_petho(inst, 0), DomainError);
}

TEST(DujellaPetho, RationalTauReportsFailure) {
  ReductionInstance inst{constant_producer(BigRat(45, 16)), constant_producer(BigRat(1, 5)),
                         constant_producer(BigRat(10)), constant_producer(BigRat(2)), BigInt(100)};
  const ReductionOutcome r = dujella_petho(inst, 0);
  EXPECT_FALSE(r.success);
  EXPECT_FALSE(r.failure.empty());
}

// No (u, v) with 1 <= u <= M and 0 < |u tau - v + mu| < A B^{-w} for w >= w_bound,
// checked by running through every u.
TEST(DujellaPetho, SoundAgainstExhaustiveSearch) {
  std::mt19937 rng(99);
  std::uniform_int_distribution<long> sq(2, 400), num(1, 997), mm(10, 3000);
  int successes = 0;
  for (int i = 0; i < 50; ++i) {
    long s = sq(rng);
    while (mpz_perfect_square_p(BigInt(s).get_mpz_t())) ++s;
    const BigRat mu_v(BigInt(num(rng)), BigInt(1009));
    const BigInt M(mm(rng));
    const BigRat A_v(BigInt(num(rng)), BigInt(10)), B_v(BigInt(num(rng) + 1009), BigInt(1009));
    ReductionInstance inst{sqrt_of(s), constant_producer(mu_v), constant_producer(A_v), constant_producer(B_v), M};
    const ReductionOutcome r = dujella_petho(inst, 0);
    if (!r.success) continue;
    ++successes;
    EXPECT_GT(r.q_used, 6 * M);
    EXPECT_TRUE(r.epsilon.certainly_positive());
    const Precision p = 256;
    const RealBall tau = eval_sqrt(RealBall::from_int(s, p));
    const RealBall mu = RealBall::from_rational(mu_v, p);
    const RealBall bound = RealBall::from_rational(A_v, p) /
                           eval_pow(RealBall::from_rational(B_v, p), r.w_bound.get_ui());
    for (long u = 1; u <= M.get_si(); ++u) {
      const RealBall x = RealBall::from_int(u, p) * tau + mu;
      const NearestDistance d = certified_nearest_distance(x);
      ASSERT_FALSE(d.ambiguous);
      ASSERT_FALSE(d.distance.exact_upper() < bound.exact_lower() && d.distance.certainly_positive())
          << "instance " << i << " u=" << u;
    }
  }
  EXPECT_GT(successes, 40);
}

TEST(DujellaPetho, LadderAdvancesPastSmallDenominators) {
  ReductionInstance inst{golden(), constant_producer(BigRat(1, 7)), constant_producer(BigRat(3)),
                         constant_producer(BigRat(2)), BigInt(1000)};
  const ReductionOutcome r = dujella_petho(inst, 0);
  ASSERT_TRUE(r.success);
  EXPECT_GT(r.q_used, 6000);
  EXPECT_LE(kfib(2, r.q_index + 1), r.q_used);
  EXPECT_GE(r.attempts, 1);
}
