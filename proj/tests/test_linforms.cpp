#include <gtest/gtest.h>

#include <cmath>

#include "pellfib/kfib.hpp"
#include "pellfib/linforms.hpp"

using namespace pellfib;

TEST(Matveev, SingleLogarithm) {
  MatveevInputs in;
  in.t = 1;
  in.D = 1;
  in.B = 1;
  in.A = {0.16};
  const double v = matveev_lower_bound(in);
  EXPECT_LE(v, -181440.0);
  EXPECT_NEAR(v, -181440.0, 1e-6);
}

TEST(Matveev, RejectsBadInputs) {
  EXPECT_THROW(matveev_lower_bound(MatveevInputs{1, 1, 1, {0.1}}), DomainError);
  EXPECT_THROW(matveev_lower_bound(MatveevInputs{2, 1, 1, {1.0}}), DomainError);
  EXPECT_THROW(matveev_lower_bound(MatveevInputs{1, 1, 0.5, {1.0}}), DomainError);
}

TEST(Matveev, LinearInEachA) {
  MatveevInputs in{3, 8, 100, {1.5, 2.0, 3.0}};
  const double base = matveev_lower_bound(in);
  for (std::size_t i = 0; i < 3; ++i) {
    MatveevInputs twice = in;
    twice.A[i] *= 2;
    EXPECT_NEAR(matveev_lower_bound(twice) / base, 2.0, 1e-12) << i;
  }
}

// The Pell-side instance stays above -1.6e13 k^4 (log k)^2 log(delta) (1 + log m).
TEST(Matveev, PellInstanceWithinStatedConstant) {
  for (long k : {4L, 5L, 7L, 10L, 31L, 100L, 257L, 500L}) {
    for (double log_delta : {0.8813736, 2.0634370, 10.0, 150.0}) {
      for (long m : {3L, 50L, 1049L, 1000000L}) {
        const double v = matveev_lower_bound(matveev_pell_inputs(k, log_delta, m));
        const double lk = std::log(static_cast<double>(k));
        const double rhs = -1.6e13 * std::pow(k, 4) * lk * lk * log_delta * (1 + std::log(double(m)));
        EXPECT_GE(v, rhs) << k << "," << log_delta << "," << m;
      }
    }
  }
}

TEST(Lmn, Degree2Instance) {
  const double log_delta = 5.0, e_arg = 1000.0;
  LMNInputs in{2, log_delta / 2, std::log(2.0), e_arg};
  const LmnMaxTerm e = lmn_max_term(in);
  EXPECT_EQ(e.branch, LmnBranch::twenty_one_over_d);
  EXPECT_NEAR(e.value.mid_double(), 10.5, 1e-12);
  const double expect = -194.72 * std::log(2.0) * log_delta * 10.5 * 10.5;
  EXPECT_NEAR(lmn_lower_bound(in), expect, 1e-9 * std::fabs(expect));
  EXPECT_GT(lmn_lower_bound(in), -195 * std::log(2.0) * log_delta * 10.5 * 10.5);

  in.bprime = 1e12;
  EXPECT_EQ(lmn_max_term(in).branch, LmnBranch::log_bprime);
  EXPECT_NEAR(lmn_max_term(in).value.mid_double(), std::log(1e12) + 0.14, 1e-12);
}

TEST(Lmn, DegreeOneUsesTwentyOne) {
  LMNInputs in{1, 2.0, 3.0, 5.0};
  const LmnMaxTerm e = lmn_max_term(in);
  EXPECT_EQ(e.branch, LmnBranch::twenty_one_over_d);
  EXPECT_NEAR(lmn_lower_bound(in), -24.34 * 441 * 2.0 * 3.0, 1e-7);
}

TEST(Lmn, HalfOnlyForLargeDegreeAndSmallBprime) {
  EXPECT_EQ(lmn_max_term(LMNInputs{100, 1, 1, 1.1}).branch, LmnBranch::one_half);
  for (long D = 2; D <= 200; D += 3) {
    for (double b = 2; b < 1e9; b *= 3.7) {
      EXPECT_NE(lmn_max_term(LMNInputs{D, 1, 1, b}).branch, LmnBranch::one_half) << D << "," << b;
    }
  }
}

TEST(Lmn, RejectsSmallLogB) {
  EXPECT_THROW(lmn_lower_bound(LMNInputs{2, 0.4, 1, 3}), DomainError);
  EXPECT_THROW(lmn_lower_bound(LMNInputs{0, 1, 1, 3}), DomainError);
}

TEST(LogPowerBound, Examples) {
  EXPECT_NEAR(guzman_luca_bound(1, 100), 200 * std::log(100.0), 1e-9);
  EXPECT_NEAR(guzman_luca_bound(1, 100), 921.03, 0.01);
  EXPECT_THROW(guzman_luca_bound(2, 256), DomainError);
  EXPECT_NO_THROW(guzman_luca_bound(2, 257));
  EXPECT_THROW(guzman_luca_bound(0, 10), DomainError);
}

// The m = 3 step of the chain stays below the tabulated m_2 bound.
TEST(LogPowerBound, ChainBelowTabulatedBound) {
  for (long k : {4L, 10L, 100L, 500L}) {
    const double lk = std::log(static_cast<double>(k));
    const double T = 1.25e16 * std::pow(k, 7) * lk * lk * lk;
    const double x = guzman_luca_bound(3, T);
    EXPECT_LT(x, bound_tables(k).m2_max.get_d()) << k;
  }
}

TEST(BoundTables, KnownScale) {
  const BoundTable t = bound_tables(500);
  EXPECT_LE(t.n2_max, paper_scale_M());
  EXPECT_LT(t.n2_max, BigInt("100000000000000000000000000000"));
  EXPECT_LT(6 * paper_scale_M(), kfib(2, 150));
  EXPECT_THROW(bound_tables(3), DomainError);
}

TEST(BoundTables, Monotone) {
  BoundTable prev = bound_tables(4);
  EXPECT_GT(prev.m1_max, 0);
  EXPECT_GT(prev.m2_max, 0);
  EXPECT_GT(prev.n2_max, 0);
  for (long k = 5; k <= 600; ++k) {
    const BoundTable t = bound_tables(k);
    ASSERT_GT(t.m1_max, prev.m1_max) << k;
    ASSERT_GT(t.m2_max, prev.m2_max) << k;
    ASSERT_GT(t.n2_max, prev.n2_max) << k;
    prev = t;
  }
}

TEST(SingleBounds, MonotoneInputs) {
  double prev_n = 0, prev_m = 0;
  for (long k = 2; k <= 500; k += 7) {
    const double n = n_bound_single(k, 1000), m = m_bound_single(k, 3.0, 1000);
    EXPECT_GE(n, prev_n);
    EXPECT_GE(m, prev_m);
    prev_n = n;
    prev_m = m;
  }
  EXPECT_LE(m_bound_single(10, 2.0, 50), m_bound_single(10, 2.5, 50));
  EXPECT_LE(n_bound_single(10, 50), n_bound_single(10, 51));
  EXPECT_LE(matveev_lower_bound(matveev_pell_inputs(10, 3.0, 60)),
            matveev_lower_bound(matveev_pell_inputs(10, 3.0, 50)));
  EXPECT_LE(lmn_lower_bound(LMNInputs{2, 3, 1, 1e9}), lmn_lower_bound(LMNInputs{2, 3, 1, 1e8}));
}

TEST(SingleBounds, RejectBadInputs) {
  EXPECT_THROW(n_bound_single(1, 10), DomainError);
  EXPECT_THROW(m_bound_single(4, 1.0, 0.5), DomainError);
}
