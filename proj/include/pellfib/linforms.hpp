#pragma once

// Explicit lower bounds for linear forms in logarithms and the bound
// formulas derived from them. Every value is evaluated in ball arithmetic
// and rounded outward: lower bounds down, upper bounds up.

#include <string>
#include <vector>

#include "pellfib/ball.hpp"
#include "pellfib/bigint.hpp"
#include "pellfib/errors.hpp"

namespace pellfib {

namespace detail {

inline constexpr Precision kBoundPrecision = 256;

inline RealBall ball_of(double v) {
  BigRat q;
  mpq_set_d(q.get_mpq_t(), v);
  return RealBall::from_rational(q, kBoundPrecision);
}
inline RealBall ball_of(const BigRat& v) { return RealBall::from_rational(v, kBoundPrecision); }
inline RealBall ball_of(long v) { return RealBall::from_int(v, kBoundPrecision); }

inline double round_down(const RealBall& b) { return mpfr_get_d(b.lower().get(), MPFR_RNDD); }
inline double round_up(const RealBall& b) { return mpfr_get_d(b.upper().get(), MPFR_RNDU); }

}  // namespace detail

/// Inputs of Matveev's bound for gamma_1^{b_1} ... gamma_t^{b_t} - 1.
struct MatveevInputs {
  long t = 1;             // number of logarithms
  long D = 1;             // degree of the number field
  double B = 1;           // B >= max |b_i|
  std::vector<double> A;  // A_i >= max{D h(gamma_i), |log gamma_i|, 0.16}
};

/// -1.4 * 30^{t+3} * t^{4.5} * D^2 (1 + log D)(1 + log B) A_1 ... A_t,
/// a lower bound for log |Lambda|.
inline double matveev_lower_bound(const MatveevInputs& in) {
  using detail::ball_of;
  if (in.t < 1) throw DomainError("t must be at least 1");
  if (in.D < 1) throw DomainError("D must be at least 1");
  if (!(in.B >= 1)) throw DomainError("B must be at least 1");
  if (static_cast<long>(in.A.size()) != in.t) throw DomainError("need exactly t values A_i");
  const RealBall one = ball_of(1L);
  RealBall v = ball_of(BigRat(7, 5)) * eval_pow(ball_of(30L), static_cast<unsigned long>(in.t + 3));
  const RealBall t = ball_of(in.t);
  v = v * eval_pow(t, 4) * eval_sqrt(t);
  const RealBall d = ball_of(in.D);
  v = v * d * d * (one + eval_log(d)) * (one + eval_log(ball_of(in.B)));
  for (double a : in.A) {
    if (!(a >= 0.16)) throw DomainError("every A_i must be at least 0.16");
    v = v * ball_of(a);
  }
  return detail::round_down(-v);
}

/// Matveev data for n log(delta) - log(2 f_k(alpha)) - (m-1) log(alpha):
/// t = 3, D = 2k, B = m, A = (k log delta, 8 k log k, 2 log 2).
inline MatveevInputs matveev_pell_inputs(long k, double log_delta, long m) {
  const RealBall kb = detail::ball_of(k);
  MatveevInputs in;
  in.t = 3;
  in.D = 2 * k;
  in.B = static_cast<double>(m);
  in.A = {detail::round_up(kb * detail::ball_of(log_delta)),
          detail::round_up(detail::ball_of(8L) * kb * eval_log(kb)),
          detail::round_up(detail::ball_of(2L) * eval_log(detail::ball_of(2L)))};
  return in;
}

/// Inputs of the Laurent-Mignotte-Nesterenko bound for two logarithms.
struct LMNInputs {
  long D = 1;
  double logB1 = 1;  // >= max{h(gamma_1), |log gamma_1| / D, 1 / D}
  double logB2 = 1;
  double bprime = 1;  // |b_1| / (D log B_2) + |b_2| / (D log B_1)
};

enum class LmnBranch { log_bprime, twenty_one_over_d, one_half };

struct LmnMaxTerm {
  RealBall value;  // max{log b' + 0.14, 21/D, 1/2}
  LmnBranch branch;
};

inline LmnMaxTerm lmn_max_term(const LMNInputs& in) {
  using detail::ball_of;
  if (in.D < 1) throw DomainError("D must be at least 1");
  if (!(in.bprime > 0)) throw DomainError("b' must be positive");
  const RealBall candidates[3] = {eval_log(ball_of(in.bprime)) + ball_of(BigRat(7, 50)),
                                  ball_of(BigRat(21, in.D)), ball_of(BigRat(1, 2))};
  RealBall best = eval_max(eval_max(candidates[0], candidates[1]), candidates[2]);
  int idx = 0;
  for (int i = 1; i < 3; ++i) {
    if (mpfr_cmp(candidates[i].midpoint().get(), candidates[idx].midpoint().get()) > 0) idx = i;
  }
  return {best, static_cast<LmnBranch>(idx)};
}

/// -24.34 D^4 (max{log b' + 0.14, 21/D, 1/2})^2 log B_1 log B_2, a lower
/// bound for log |Gamma|.
inline double lmn_lower_bound(const LMNInputs& in) {
  using detail::ball_of;
  const BigRat min_log = BigRat(1, in.D < 1 ? 1 : in.D);
  BigRat l1, l2;
  mpq_set_d(l1.get_mpq_t(), in.logB1);
  mpq_set_d(l2.get_mpq_t(), in.logB2);
  if (in.D < 1) throw DomainError("D must be at least 1");
  if (l1 < min_log || l2 < min_log) throw DomainError("log B_i must be at least 1/D");
  const LmnMaxTerm e = lmn_max_term(in);
  const RealBall d = ball_of(in.D);
  const RealBall v = ball_of(BigRat(2434, 100)) * eval_pow(d, 4) * e.value * e.value *
                     ball_of(in.logB1) * ball_of(in.logB2);
  return detail::round_down(-v);
}

/// If T > (4m^2)^m and T > x / (log x)^m then x < 2^m T (log T)^m; returns
/// that upper bound.
inline double guzman_luca_bound(long m, double T) {
  using detail::ball_of;
  if (m < 1) throw DomainError("m must be at least 1");
  const RealBall tb = ball_of(T);
  const RealBall threshold = eval_pow(ball_of(4 * m * m), static_cast<unsigned long>(m));
  if (!(tb - threshold).certainly_positive()) {
    throw DomainError("bound needs T > (4m^2)^m");
  }
  const RealBall v = eval_pow(ball_of(2L), static_cast<unsigned long>(m)) * tb *
                     eval_pow(eval_log(tb), static_cast<unsigned long>(m));
  return detail::round_up(v);
}

/// Upper bounds for a pair of coincidences x_{n_j} = F_{m_j}^(k), j = 1, 2.
struct BoundTable {
  BigInt m1_max;  // ceil(3.6e5 k^3 (log k)^3)
  BigInt m2_max;  // ceil(4.1e22 k^7 (log k)^6)
  BigInt n2_max;  // ceil(8.2e14 k^4 (log k)^3)
};

namespace detail {

inline BigInt ceil_upper(const RealBall& b) { return ceil_of(b.exact_upper()); }

inline BigRat decimal(long mantissa, unsigned long exp10) {
  BigInt p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, exp10);
  return BigRat(BigInt(mantissa) * p);
}

}  // namespace detail

inline BoundTable bound_tables(long k) {
  using detail::ball_of;
  if (k < 4) throw DomainError("bound tables need k >= 4");
  const RealBall kb = ball_of(k), lk = eval_log(kb);
  BoundTable t;
  t.m1_max = detail::ceil_upper(ball_of(BigRat(360000)) * eval_pow(kb, 3) * eval_pow(lk, 3));
  t.m2_max = detail::ceil_upper(ball_of(detail::decimal(41, 21)) * eval_pow(kb, 7) * eval_pow(lk, 6));
  t.n2_max = detail::ceil_upper(ball_of(detail::decimal(82, 13)) * eval_pow(kb, 4) * eval_pow(lk, 3));
  return t;
}

/// n < 1.7e13 k^4 (log k)^2 (1 + log m) for x_n = F_m^(k); returns the bound.
inline double n_bound_single(long k, double m) {
  using detail::ball_of;
  if (k < 2) throw DomainError("k must be at least 2");
  if (!(m >= 1)) throw DomainError("m must be at least 1");
  const RealBall kb = ball_of(k);
  const RealBall v = ball_of(detail::decimal(17, 12)) * eval_pow(kb, 4) * eval_pow(eval_log(kb), 2) *
                     (ball_of(1L) + eval_log(ball_of(m)));
  return detail::round_up(v);
}

/// m < 2.6e13 k^4 (log k)^2 log(delta) (1 + log m); returns the bound.
inline double m_bound_single(long k, double log_delta, double m) {
  using detail::ball_of;
  if (k < 2) throw DomainError("k must be at least 2");
  if (!(m >= 1)) throw DomainError("m must be at least 1");
  const RealBall kb = ball_of(k);
  const RealBall v = ball_of(detail::decimal(26, 12)) * eval_pow(kb, 4) * eval_pow(eval_log(kb), 2) *
                     ball_of(log_delta) * (ball_of(1L) + eval_log(ball_of(m)));
  return detail::round_up(v);
}

/// The coefficient bound M = 1.3e28 used with k <= 500.
inline BigInt paper_scale_M() { return detail::decimal(13, 27).get_num(); }

}  // namespace pellfib
