#pragma once

// Certified isolation of a simple real root of an integer polynomial.

#include <cstdlib>
#include <utility>
#include <vector>

#include "pellfib/ball.hpp"
#include "pellfib/bigint.hpp"
#include "pellfib/errors.hpp"

namespace pellfib {

/// Sparse integer polynomial: sum of coefficient * x^exponent.
class IntPoly {
 public:
  struct Term {
    BigInt coefficient;
    unsigned long exponent;
  };

  IntPoly() = default;
  explicit IntPoly(std::vector<Term> terms) : terms_(std::move(terms)) {}

  /// Dense form: coefficients[i] multiplies x^i.
  static IntPoly dense(const std::vector<long>& coefficients) {
    std::vector<Term> t;
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
      if (coefficients[i] != 0) t.push_back({coefficients[i], static_cast<unsigned long>(i)});
    }
    return IntPoly(std::move(t));
  }

  /// x^{k+1} - 2x^k + 1 = (x - 1)(x^k - x^{k-1} - ... - 1).
  static IntPoly kbonacci_companion(unsigned long k) {
    return IntPoly({{1, k + 1}, {-2, k}, {1, 0}});
  }

  const std::vector<Term>& terms() const { return terms_; }

  IntPoly derivative() const {
    std::vector<Term> d;
    for (const auto& t : terms_) {
      if (t.exponent > 0) d.push_back({t.coefficient * t.exponent, t.exponent - 1});
    }
    return IntPoly(std::move(d));
  }

  BigRat evaluate(const BigRat& x) const {
    BigRat sum = 0;
    for (const auto& t : terms_) {
      BigRat p;
      mpz_pow_ui(p.get_num_mpz_t(), x.get_num_mpz_t(), t.exponent);
      mpz_pow_ui(p.get_den_mpz_t(), x.get_den_mpz_t(), t.exponent);
      sum += BigRat(t.coefficient) * p;
    }
    return sum;
  }

  RealBall evaluate(const RealBall& x) const {
    RealBall sum = RealBall::from_int(0, x.precision());
    for (const auto& t : terms_) {
      sum = sum + RealBall::from_int(t.coefficient, x.precision()) * eval_pow(x, t.exponent);
    }
    return sum;
  }

  /// Uncertified floating evaluation (Newton iterations only).
  void evaluate(mpfr_ptr out, mpfr_srcptr x) const {
    BigFloat acc(mpfr_get_prec(out)), term(mpfr_get_prec(out));
    for (const auto& t : terms_) {
      mpfr_pow_ui(term.get(), x, t.exponent, MPFR_RNDN);
      mpfr_mul_z(term.get(), term.get(), t.coefficient.get_mpz_t(), MPFR_RNDN);
      mpfr_add(acc.get(), acc.get(), term.get(), MPFR_RNDN);
    }
    mpfr_set(out, acc.get(), MPFR_RNDN);
  }

 private:
  std::vector<Term> terms_;
};

namespace detail {

inline int exact_sign(const BigRat& v) { return sgn(v); }

// floor(log2(r)) for r > 0.
inline long floor_log2(const BigRat& r) {
  long e = static_cast<long>(mpz_sizeinbase(r.get_num_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(r.get_den_mpz_t(), 2));
  // 2^(e-1) < r < 2^(e+1); settle the exact exponent.
  auto pow2q = [](long k) {
    BigRat q(1);
    if (k >= 0) mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(k));
    else mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-k));
    return q;
  };
  while (pow2q(e) > r) --e;
  while (pow2q(e + 1) <= r) ++e;
  return e;
}

}  // namespace detail

/// Certified ball around the unique simple root of `poly` in (lo, hi).
///
/// The root is approximated by safeguarded Newton iteration at `prec` bits
/// and certified by the signs of `poly` at the two ball endpoints. Throws
/// BracketError when `poly` does not change sign strictly across the
/// bracket and PrecisionEscalation when `target_radius` cannot be certified
/// at `prec` bits.
inline RealBall refine_root(const IntPoly& poly, const BigRat& lo, const BigRat& hi,
                            const BigRat& target_radius, Precision prec) {
  if (!(lo < hi)) throw BracketError("empty bracket");
  if (target_radius <= 0) throw DomainError("target radius must be positive");
  const int s_lo = detail::exact_sign(poly.evaluate(lo));
  const int s_hi = detail::exact_sign(poly.evaluate(hi));
  if (s_lo == 0 || s_hi == 0 || s_lo == s_hi) {
    throw BracketError("polynomial does not change sign on the bracket");
  }

  const IntPoly dpoly = poly.derivative();
  BigFloat a(prec), b(prec), x(prec), fx(prec), dfx(prec), step(prec), next(prec);
  mpfr_set_q(a.get(), lo.get_mpq_t(), MPFR_RNDU);
  mpfr_set_q(b.get(), hi.get_mpq_t(), MPFR_RNDD);
  mpfr_add(x.get(), a.get(), b.get(), MPFR_RNDN);
  mpfr_div_2ui(x.get(), x.get(), 1, MPFR_RNDN);

  const long max_iter = 4 * static_cast<long>(prec) + 64;
  for (long it = 0; it < max_iter; ++it) {
    poly.evaluate(fx.get(), x.get());
    if (mpfr_zero_p(fx.get())) break;
    // Shrink the guidance bracket with the (uncertified) sign at x.
    if (mpfr_sgn(fx.get()) == s_lo) mpfr_set(a.get(), x.get(), MPFR_RNDN);
    else mpfr_set(b.get(), x.get(), MPFR_RNDN);
    dpoly.evaluate(dfx.get(), x.get());
    bool newton_ok = !mpfr_zero_p(dfx.get());
    if (newton_ok) {
      mpfr_div(step.get(), fx.get(), dfx.get(), MPFR_RNDN);
      mpfr_sub(next.get(), x.get(), step.get(), MPFR_RNDN);
      newton_ok = mpfr_cmp(next.get(), a.get()) > 0 && mpfr_cmp(next.get(), b.get()) < 0;
    }
    if (!newton_ok) {
      mpfr_add(next.get(), a.get(), b.get(), MPFR_RNDN);
      mpfr_div_2ui(next.get(), next.get(), 1, MPFR_RNDN);
    }
    const bool converged = mpfr_equal_p(next.get(), x.get()) ||
                           (newton_ok && !mpfr_zero_p(step.get()) && !mpfr_zero_p(next.get()) &&
                            mpfr_get_exp(step.get()) < mpfr_get_exp(next.get()) - prec + 2);
    mpfr_swap(x.get(), next.get());
    if (converged) break;
  }

  // Radius: the largest power of two not above the target.
  const long rho_exp = detail::floor_log2(target_radius);
  if (!mpfr_zero_p(x.get()) && rho_exp < mpfr_get_exp(x.get()) - prec + 4) {
    throw PrecisionEscalation("root radius target unreachable at " + std::to_string(prec) +
                              " bits");
  }
  BigRat rho(1);
  if (rho_exp >= 0) mpq_mul_2exp(rho.get_mpq_t(), rho.get_mpq_t(), static_cast<mp_bitcnt_t>(rho_exp));
  else mpq_div_2exp(rho.get_mpq_t(), rho.get_mpq_t(), static_cast<mp_bitcnt_t>(-rho_exp));

  const BigRat mid = to_rational(x.get());
  BigRat left = mid - rho, right = mid + rho;
  if (left < lo) left = lo;
  if (right > hi) right = hi;
  const RealBall g_left = poly.evaluate(RealBall::from_rational(left, prec + 16));
  const RealBall g_right = poly.evaluate(RealBall::from_rational(right, prec + 16));
  const auto sl = g_left.certified_sign();
  const auto sr = g_right.certified_sign();
  if (!sl || !sr || *sl != s_lo || *sr != s_hi) {
    throw PrecisionEscalation("root sign certification failed at " + std::to_string(prec) +
                              " bits");
  }
  if (left == mid - rho && right == mid + rho) {
    return RealBall::from_mid_rad(mid, rho, prec);
  }
  return RealBall::from_rational_endpoints(left, right, prec);
}

}  // namespace pellfib
