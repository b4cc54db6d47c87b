#pragma once

// Midpoint-radius ball arithmetic over MPFR.
//
// A RealBall [m +/- r] stands for every real in [m - r, m + r]. Each
// operation returns a ball that contains the exact image of every point of
// its inputs: midpoints are rounded to nearest and the rounding error is
// folded into the radius, radii are always rounded up.

#include <mpfr.h>

#include <algorithm>
#include <cstdio>
#include <optional>
#include <string>
#include <utility>

#include "pellfib/bigint.hpp"
#include "pellfib/errors.hpp"

namespace pellfib {

using Precision = mpfr_prec_t;

/// Owning handle for an mpfr_t.
class BigFloat {
 public:
  explicit BigFloat(Precision prec = 64) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  Precision precision() const { return mpfr_get_prec(v_); }

 private:
  mpfr_t v_;
};

/// Exact value of a finite MPFR number.
inline BigRat to_rational(mpfr_srcptr x) {
  if (!mpfr_number_p(x)) throw DomainError("non-finite value has no rational form");
  if (mpfr_zero_p(x)) return 0;
  BigInt m;
  const mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
  BigRat r(m);
  if (e >= 0) {
    mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  }
  return r;
}

class RealBall {
 public:
  static constexpr Precision kRadiusPrecision = 64;

  RealBall() : mid_(64), rad_(kRadiusPrecision) {}

  static RealBall from_int(long v, Precision prec) {
    RealBall b(prec);
    const int t = mpfr_set_si(b.mid_.get(), v, MPFR_RNDN);
    b.add_rounding_error(t);
    return b;
  }

  static RealBall from_int(const BigInt& v, Precision prec) {
    RealBall b(prec);
    const int t = mpfr_set_z(b.mid_.get(), v.get_mpz_t(), MPFR_RNDN);
    b.add_rounding_error(t);
    return b;
  }

  static RealBall from_rational(const BigRat& v, Precision prec) {
    RealBall b(prec);
    const int t = mpfr_set_q(b.mid_.get(), v.get_mpq_t(), MPFR_RNDN);
    b.add_rounding_error(t);
    return b;
  }

  /// Smallest representable ball (at `prec`) containing [lo, hi].
  static RealBall from_endpoints(mpfr_srcptr lo, mpfr_srcptr hi, Precision prec) {
    if (mpfr_cmp(lo, hi) > 0) throw DomainError("ball endpoints out of order");
    RealBall b(prec);
    mpfr_add(b.mid_.get(), lo, hi, MPFR_RNDN);
    mpfr_div_2ui(b.mid_.get(), b.mid_.get(), 1, MPFR_RNDN);
    BigFloat up(kRadiusPrecision), down(kRadiusPrecision);
    mpfr_sub(up.get(), hi, b.mid_.get(), MPFR_RNDU);
    mpfr_sub(down.get(), b.mid_.get(), lo, MPFR_RNDU);
    mpfr_max(b.rad_.get(), up.get(), down.get(), MPFR_RNDU);
    return b;
  }

  static RealBall from_rational_endpoints(const BigRat& lo, const BigRat& hi, Precision prec) {
    BigFloat l(prec), h(prec);
    mpfr_set_q(l.get(), lo.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(h.get(), hi.get_mpq_t(), MPFR_RNDU);
    return from_endpoints(l.get(), h.get(), prec);
  }

  /// Ball with an exactly given midpoint and radius (radius rounded up).
  static RealBall from_mid_rad(const BigRat& mid, const BigRat& rad, Precision prec) {
    if (rad < 0) throw DomainError("negative radius");
    RealBall b = from_rational(mid, prec);
    BigFloat r(kRadiusPrecision);
    mpfr_set_q(r.get(), rad.get_mpq_t(), MPFR_RNDU);
    mpfr_add(b.rad_.get(), b.rad_.get(), r.get(), MPFR_RNDU);
    return b;
  }

  static RealBall pi(Precision prec) {
    BigFloat lo(prec), hi(prec);
    mpfr_const_pi(lo.get(), MPFR_RNDD);
    mpfr_const_pi(hi.get(), MPFR_RNDU);
    return from_endpoints(lo.get(), hi.get(), prec);
  }

  Precision precision() const { return mid_.precision(); }
  const BigFloat& midpoint() const { return mid_; }
  const BigFloat& radius() const { return rad_; }
  bool is_exact() const { return mpfr_zero_p(rad_.get()) != 0; }

  BigFloat lower() const {
    BigFloat r(precision());
    mpfr_sub(r.get(), mid_.get(), rad_.get(), MPFR_RNDD);
    return r;
  }
  BigFloat upper() const {
    BigFloat r(precision());
    mpfr_add(r.get(), mid_.get(), rad_.get(), MPFR_RNDU);
    return r;
  }
  BigRat exact_lower() const { return to_rational(mid_.get()) - to_rational(rad_.get()); }
  BigRat exact_upper() const { return to_rational(mid_.get()) + to_rational(rad_.get()); }

  bool certainly_positive() const { return mpfr_sgn(lower().get()) > 0; }
  bool certainly_negative() const { return mpfr_sgn(upper().get()) < 0; }
  bool certainly_nonnegative() const { return mpfr_sgn(lower().get()) >= 0; }
  bool contains_zero() const { return !certainly_positive() && !certainly_negative(); }

  /// +1 / -1 when the sign is certified, nullopt when the ball touches zero.
  std::optional<int> certified_sign() const {
    if (certainly_positive()) return 1;
    if (certainly_negative()) return -1;
    return std::nullopt;
  }

  bool contains(const BigRat& v) const { return exact_lower() <= v && v <= exact_upper(); }
  bool contains(const RealBall& inner) const {
    return exact_lower() <= inner.exact_lower() && inner.exact_upper() <= exact_upper();
  }

  /// Same ball rounded to another precision (radius grows by the rounding).
  RealBall with_precision(Precision prec) const {
    RealBall b(prec);
    const int t = mpfr_set(b.mid_.get(), mid_.get(), MPFR_RNDN);
    mpfr_set(b.rad_.get(), rad_.get(), MPFR_RNDU);
    b.add_rounding_error(t);
    return b;
  }

  double mid_double() const { return mpfr_get_d(mid_.get(), MPFR_RNDN); }
  double lower_double() const { return mpfr_get_d(lower().get(), MPFR_RNDD); }
  double upper_double() const { return mpfr_get_d(upper().get(), MPFR_RNDU); }

  std::string to_string(int digits = 20) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "[%.*Rg +/- %.3Rg]", digits, mid_.get(), rad_.get());
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
  }

  RealBall operator-() const {
    RealBall b(*this);
    mpfr_neg(b.mid_.get(), b.mid_.get(), MPFR_RNDN);
    return b;
  }

  friend RealBall operator+(const RealBall& a, const RealBall& b) {
    RealBall r(std::max(a.precision(), b.precision()));
    const int t = mpfr_add(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
    mpfr_add(r.rad_.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
    r.add_rounding_error(t);
    return r;
  }

  friend RealBall operator-(const RealBall& a, const RealBall& b) {
    RealBall r(std::max(a.precision(), b.precision()));
    const int t = mpfr_sub(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
    mpfr_add(r.rad_.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
    r.add_rounding_error(t);
    return r;
  }

  friend RealBall operator*(const RealBall& a, const RealBall& b) {
    RealBall r(std::max(a.precision(), b.precision()));
    const int t = mpfr_mul(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
    // rad = |ma| rb + |mb| ra + ra rb
    BigFloat x(kRadiusPrecision), y(kRadiusPrecision);
    mpfr_mul(x.get(), a.mid_.get(), b.rad_.get(), MPFR_RNDA);
    mpfr_abs(x.get(), x.get(), MPFR_RNDU);
    mpfr_mul(y.get(), b.mid_.get(), a.rad_.get(), MPFR_RNDA);
    mpfr_abs(y.get(), y.get(), MPFR_RNDU);
    mpfr_add(r.rad_.get(), x.get(), y.get(), MPFR_RNDU);
    mpfr_mul(x.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
    mpfr_add(r.rad_.get(), r.rad_.get(), x.get(), MPFR_RNDU);
    r.add_rounding_error(t);
    return r;
  }

  friend RealBall operator/(const RealBall& a, const RealBall& b) {
    if (b.contains_zero()) throw DomainError("division by a ball containing zero");
    if (b.is_exact()) {
      RealBall r(std::max(a.precision(), b.precision()));
      const int t = mpfr_div(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
      BigFloat babs(kRadiusPrecision);
      mpfr_abs(babs.get(), b.mid_.get(), MPFR_RNDD);
      mpfr_div(r.rad_.get(), a.rad_.get(), babs.get(), MPFR_RNDU);
      r.add_rounding_error(t);
      return r;
    }
    return a * b.reciprocal();
  }

  RealBall reciprocal() const {
    if (contains_zero()) throw DomainError("reciprocal of a ball containing zero");
    const Precision p = precision();
    BigFloat lo = lower(), hi = upper(), rlo(p), rhi(p);
    // 1/x is decreasing on each sign-definite interval.
    mpfr_ui_div(rlo.get(), 1, hi.get(), MPFR_RNDD);
    mpfr_ui_div(rhi.get(), 1, lo.get(), MPFR_RNDU);
    return from_endpoints(rlo.get(), rhi.get(), p);
  }

  // Applies an increasing function given as a directed-rounding MPFR kernel.
  template <typename Kernel>
  RealBall map_increasing(Kernel&& kernel) const {
    const Precision p = precision();
    BigFloat lo = lower(), hi = upper(), flo(p), fhi(p);
    kernel(flo.get(), lo.get(), MPFR_RNDD);
    kernel(fhi.get(), hi.get(), MPFR_RNDU);
    return from_endpoints(flo.get(), fhi.get(), p);
  }

 private:
  explicit RealBall(Precision prec) : mid_(prec), rad_(kRadiusPrecision) {}

  void add_rounding_error(int ternary) {
    if (ternary == 0 || mpfr_zero_p(mid_.get())) return;
    BigFloat ulp(kRadiusPrecision);
    mpfr_set_ui_2exp(ulp.get(), 1, mpfr_get_exp(mid_.get()) - precision(), MPFR_RNDU);
    mpfr_add(rad_.get(), rad_.get(), ulp.get(), MPFR_RNDU);
  }

  BigFloat mid_;
  BigFloat rad_;
};

/// Natural logarithm. Throws DomainError unless the ball is strictly positive.
inline RealBall eval_log(const RealBall& x) {
  if (!x.certainly_positive()) throw DomainError("log of a ball that is not strictly positive");
  return x.map_increasing([](mpfr_ptr r, mpfr_srcptr a, mpfr_rnd_t rnd) { mpfr_log(r, a, rnd); });
}

inline RealBall eval_exp(const RealBall& x) {
  return x.map_increasing([](mpfr_ptr r, mpfr_srcptr a, mpfr_rnd_t rnd) { mpfr_exp(r, a, rnd); });
}

inline RealBall eval_sqrt(const RealBall& x) {
  if (!x.certainly_nonnegative()) throw DomainError("sqrt of a ball with negative points");
  return x.map_increasing([](mpfr_ptr r, mpfr_srcptr a, mpfr_rnd_t rnd) { mpfr_sqrt(r, a, rnd); });
}

/// Real n-th root of a nonnegative ball.
inline RealBall eval_root(const RealBall& x, unsigned long n) {
  if (n == 0) throw DomainError("zeroth root");
  if (!x.certainly_nonnegative()) throw DomainError("root of a ball with negative points");
  return x.map_increasing(
      [n](mpfr_ptr r, mpfr_srcptr a, mpfr_rnd_t rnd) { mpfr_rootn_ui(r, a, n, rnd); });
}

inline RealBall eval_pow(const RealBall& x, unsigned long n) {
  if (n == 0) return RealBall::from_int(1, x.precision());
  if (x.certainly_nonnegative()) {
    return x.map_increasing(
        [n](mpfr_ptr r, mpfr_srcptr a, mpfr_rnd_t rnd) { mpfr_pow_ui(r, a, n, rnd); });
  }
  if (x.certainly_negative()) {
    RealBall p = eval_pow(-x, n);
    return (n % 2 == 0) ? p : -p;
  }
  RealBall result = RealBall::from_int(1, x.precision());
  RealBall base = x;
  for (unsigned long e = n; e != 0; e >>= 1) {
    if (e & 1UL) result = result * base;
    if (e > 1) base = base * base;
  }
  return result;
}

inline RealBall eval_abs(const RealBall& x) {
  if (x.certainly_nonnegative()) return x;
  if (x.certainly_negative()) return -x;
  const Precision p = x.precision();
  BigFloat lo = x.lower(), hi = x.upper(), zero(p), m(p);
  mpfr_neg(lo.get(), lo.get(), MPFR_RNDU);
  mpfr_max(m.get(), lo.get(), hi.get(), MPFR_RNDU);
  return RealBall::from_endpoints(zero.get(), m.get(), p);
}

/// Ball enclosing max(a, b) for every pair of points.
inline RealBall eval_max(const RealBall& a, const RealBall& b) {
  const Precision p = std::max(a.precision(), b.precision());
  BigFloat lo(p), hi(p);
  mpfr_max(lo.get(), a.lower().get(), b.lower().get(), MPFR_RNDD);
  mpfr_max(hi.get(), a.upper().get(), b.upper().get(), MPFR_RNDU);
  return RealBall::from_endpoints(lo.get(), hi.get(), p);
}

/// Certified floor: the common floor of every point of the ball, if any.
inline std::optional<BigInt> certified_floor(const RealBall& x) {
  BigInt lo = floor_of(x.exact_lower());
  BigInt hi = floor_of(x.exact_upper());
  if (lo != hi) return std::nullopt;
  return lo;
}

struct NearestDistance {
  RealBall distance;
  bool ambiguous = false;  // the ball straddles a half-integer
};

/// Encloses ||x|| = min over integers n of |x - n| for every point of x.
inline NearestDistance certified_nearest_distance(const RealBall& x) {
  const Precision p = x.precision();
  const BigRat half(1, 2);
  const BigInt n_lo = floor_of(x.exact_lower() + half);
  const BigInt n_hi = floor_of(x.exact_upper() + half);
  if (n_lo != n_hi) {
    // Nearest integer undetermined; ||.|| still lies in [0, 1/2].
    return {RealBall::from_rational_endpoints(0, half, p), true};
  }
  return {eval_abs(x - RealBall::from_int(n_lo, p)), false};
}

}  // namespace pellfib
