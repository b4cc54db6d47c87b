#include <gtest/gtest.h>

#include <deque>
#include <random>

#include "pellfib/kfib.hpp"

using namespace pellfib;

namespace {

// Plain k-term recurrence, kept independent of KFibTable's sliding window.
std::vector<BigInt> naive_kfib(long k, long m_max) {
  std::vector<BigInt> f(static_cast<std::size_t>(m_max + k), 0);  // index j holds F_{j-k+2}
  auto at = [&](long m) -> BigInt& { return f[static_cast<std::size_t>(m + k - 2)]; };
  at(1) = 1;
  for (long m = 2; m <= m_max; ++m) {
    BigInt s = 0;
    for (long i = 1; i <= k; ++i) s += at(m - i);
    at(m) = s;
  }
  std::vector<BigInt> out;
  for (long m = 0; m <= m_max; ++m) out.push_back(at(m));
  return out;
}

}  // namespace

TEST(Kfib, Examples) {
  EXPECT_EQ(kfib(5, 7), 31);
  EXPECT_EQ(kfib(4, 5), 8);
  EXPECT_EQ(kfib(4, 7), 29);
  EXPECT_EQ(kfib(10, 16), 16336);
  EXPECT_EQ(kfib(2, 10), 55);
  EXPECT_EQ(kfib(3, 10), 149);
}

TEST(Kfib, InitialSegment) {
  EXPECT_EQ(kfib(6, -4), 0);
  EXPECT_EQ(kfib(6, 0), 0);
  EXPECT_EQ(kfib(6, 1), 1);
  EXPECT_THROW(kfib(6, -5), DomainError);
  EXPECT_THROW(kfib(1, 3), DomainError);
}

TEST(Kfib, MatchesNaiveRecurrence) {
  for (long k = 2; k <= 30; ++k) {
    const auto ref = naive_kfib(k, 200);
    const KFibTable t(k, 200);
    for (long m = 2; m <= 200; ++m) ASSERT_EQ(t.at(m), ref[static_cast<std::size_t>(m)]) << k << "," << m;
  }
}

TEST(KFibTable, Invariants) {
  for (long k = 4; k <= 60; ++k) {
    const KFibTable t(k, 4 * k + 4);
    for (long m = 2; m <= k + 1; ++m) ASSERT_EQ(t.at(m), pow2(static_cast<unsigned long>(m - 2)));
    ASSERT_EQ(t.at(k + 2), pow2(static_cast<unsigned long>(k)) - 1);
    auto F = [&](long m) -> BigInt { return m <= 0 ? BigInt(0) : (m == 1 ? BigInt(1) : t.at(m)); };
    for (long m = 3; m <= 4 * k; ++m) ASSERT_EQ(F(m), 2 * F(m - 1) - F(m - k - 1)) << k << "," << m;
  }
}

TEST(CooperHoward, Examples) {
  EXPECT_EQ(cooper_howard(5, 7), 31);
  EXPECT_EQ(cooper_howard(4, 5), 8);
  EXPECT_EQ(cooper_howard(10, 16), 16336);
}

TEST(CooperHoward, AgreesWithRecurrence) {
  for (long k = 4; k <= 60; ++k) {
    const KFibTable t(k, 4 * k + 4);
    for (long m = 2; m <= 4 * k + 4; ++m) ASSERT_EQ(cooper_howard(k, m), t.at(m)) << k << "," << m;
  }
}

TEST(GomezExpansion, Examples) {
  auto g = gomez_expansion(10, 8);
  EXPECT_EQ(g.main, BigRat(64));
  EXPECT_EQ(g.eta_actual, 0);

  g = gomez_expansion(10, 16);
  BigRat expect = BigRat(pow2(14)) * (BigRat(1) - BigRat(6, 2048));
  EXPECT_EQ(g.main, expect);
  EXPECT_EQ(g.main, BigRat(16336));
  EXPECT_EQ(g.eta_actual, 0);

  g = gomez_expansion(10, 25);
  EXPECT_LT(abs(g.eta_actual), BigRat(BigInt(4 * 25 * 25 * 25), pow2(33)));
}

TEST(GomezExpansion, Domain) {
  EXPECT_THROW(gomez_expansion(4, 16), DomainError);
  EXPECT_NO_THROW(gomez_expansion(4, 15));
}

TEST(GomezExpansion, RemainderBoundOnRandomSample) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> kd(4, 80);
  for (int i = 0; i < 100; ++i) {
    const long k = kd(rng);
    const long m_hi = std::min<long>((k < 40 ? (1L << k) : (1L << 40)) - 1, 600);
    const long m = std::uniform_int_distribution<long>(2, m_hi)(rng);
    const GomezExpansion g = gomez_expansion(k, m);  // throws if the bound fails
    EXPECT_LT(abs(g.eta_actual), g.eta_bound) << k << "," << m;
    EXPECT_EQ(g.main + g.eta_actual * BigRat(pow2(static_cast<unsigned long>(m - 2))), BigRat(kfib(k, m)));
  }
}

TEST(Norm2fk, Examples) {
  EXPECT_EQ(norm_2fk(2), BigRat(4, 5));
  EXPECT_EQ(norm_2fk(4), BigRat(16, 563));  // 144/5067 reduced
  for (long k = 2; k <= 500; ++k) ASSERT_LT(norm_2fk(k), 1) << k;
}

TEST(KContext, GoldenRatioCase) {
  const KContext c = kcontext(2, 200);
  const Precision p = c.precision;
  const RealBall s5 = eval_sqrt(RealBall::from_int(5, p));
  const RealBall phi = (RealBall::from_int(1, p) + s5) / RealBall::from_int(2, p);
  const RealBall f = phi / s5;
  EXPECT_TRUE(c.alpha.contains(phi.exact_lower()) || phi.contains(c.alpha.exact_lower()));
  EXPECT_TRUE(c.fk_alpha.exact_lower() <= f.exact_upper() && f.exact_lower() <= c.fk_alpha.exact_upper());
  EXPECT_NEAR(c.alpha.mid_double(), 1.6180339887, 1e-10);
  EXPECT_NEAR(c.fk_alpha.mid_double(), 0.7236067977, 1e-10);
  EXPECT_NEAR(c.chi.mid_double(), 0.768144152228, 1e-12);
}

TEST(KContext, K4AndInvariants) {
  EXPECT_NEAR(kcontext(4, 128).alpha.mid_double(), 1.9275619754829253, 1e-15);
  for (long k : {2L, 3L, 4L, 5L, 10L, 37L, 100L, 250L, 500L}) {
    const KContext c = kcontext(k, 350);
    const BigRat lo = BigRat(2) * (BigRat(1) - BigRat(1, pow2(static_cast<unsigned long>(k))));
    EXPECT_GT(c.alpha.exact_lower(), lo) << k;
    EXPECT_LT(c.alpha.exact_upper(), BigRat(2)) << k;
    EXPECT_GT(c.fk_alpha.exact_lower(), BigRat(1, 2)) << k;
    EXPECT_LT(c.fk_alpha.exact_upper(), BigRat(3, 4)) << k;
    EXPECT_TRUE(c.chi.certainly_positive()) << k;
    EXPECT_LT(c.chi.exact_upper(), BigRat(1)) << k;
    // chi carries about 350 significant bits despite the cancellation.
    const BigRat rel = (c.chi.exact_upper() - c.chi.exact_lower()) / c.chi.exact_lower();
    EXPECT_LT(rel, BigRat(1, pow2(300))) << k;
  }
}

TEST(KContext, RootOfCompanionPolynomial) {
  // alpha is a root of x^k - x^{k-1} - ... - 1: the ball straddles a sign change.
  for (long k : {3L, 8L, 21L}) {
    const KContext c = kcontext(k, 200);
    auto psi = [k](const BigRat& x) {
      BigRat s = 0, pw = 1;
      for (long i = 0; i < k; ++i) {
        s -= pw;
        pw *= x;
      }
      return s + pw;
    };
    EXPECT_LT(psi(c.alpha.exact_lower()), 0) << k;
    EXPECT_GT(psi(c.alpha.exact_upper()), 0) << k;
  }
}

// |F_m - f_k(alpha) alpha^{m-1}| < 1/2 and alpha^{m-2} <= F_m <= alpha^{m-1}.
TEST(KContext, BinetResidualAndGrowthEnvelope) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<long> kd(2, 200), md(2, 600);
  for (int i = 0; i < 200; ++i) {
    const long k = kd(rng), m = md(rng);
    const KContext c = kcontext(k, static_cast<Precision>(m + 128));
    const BigRat F(kfib(k, m));
    const RealBall dom = binet_dominant(c, m);
    const RealBall resid = eval_abs(dom - RealBall::from_rational(F, dom.precision()));
    EXPECT_LT(resid.exact_upper(), BigRat(1, 2)) << k << "," << m;
    EXPECT_LE(eval_pow(c.alpha, static_cast<unsigned long>(m - 2)).exact_upper(), F) << k << "," << m;
    EXPECT_GE(eval_pow(c.alpha, static_cast<unsigned long>(m - 1)).exact_lower(), F) << k << "," << m;
  }
}
