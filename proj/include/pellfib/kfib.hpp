#pragma once

// k-generalized Fibonacci numbers F_m^(k): F_{2-k} = ... = F_0 = 0, F_1 = 1,
// and each later term is the sum of the k preceding ones.

#include <cstdlib>
#include <string>
#include <vector>

#include "pellfib/ball.hpp"
#include "pellfib/bigint.hpp"
#include "pellfib/errors.hpp"
#include "pellfib/precision.hpp"
#include "pellfib/roots.hpp"

namespace pellfib {

inline void require_k(long k) {
  if (k < 2) throw DomainError("k must be at least 2, got " + std::to_string(k));
}

/// Values F_m^(k) for m in [2, m_max], indexed by m.
class KFibTable {
 public:
  KFibTable(long k, long m_max) : k_(k), m_max_(m_max) {
    require_k(k);
    if (m_max < 2) throw DomainError("table must reach m = 2");
    values_.reserve(static_cast<std::size_t>(m_max - 1));
    // Sliding window over the last k terms with a running sum.
    std::vector<BigInt> window(static_cast<std::size_t>(k), 0);
    std::size_t head = 0;  // slot holding F_{n-k}
    window[static_cast<std::size_t>(k) - 1] = 1;  // F_1
    BigInt sum = 1;
    for (long n = 2; n <= m_max; ++n) {
      BigInt next = sum;
      sum += next;
      sum -= window[head];
      window[head] = next;
      head = (head + 1) % static_cast<std::size_t>(k);
      values_.push_back(std::move(next));
    }
  }

  long k() const { return k_; }
  long m_max() const { return m_max_; }
  const BigInt& at(long m) const {
    if (m < 2 || m > m_max_) throw DomainError("m outside table range");
    return values_[static_cast<std::size_t>(m - 2)];
  }
  const std::vector<BigInt>& values() const { return values_; }

 private:
  long k_;
  long m_max_;
  std::vector<BigInt> values_;
};

/// Exact F_m^(k) by the k-term recurrence.
inline BigInt kfib(long k, long m) {
  require_k(k);
  if (m < 2 - k) throw DomainError("m below the sequence start 2 - k");
  if (m <= 0) return 0;
  if (m == 1) return 1;
  return KFibTable(k, m).at(m);
}

/// Closed form F_m^(k) = 2^{m-2} + sum_j C_{m,j} 2^{m-(k+1)j-2},
/// C_{m,j} = (-1)^j [C(m-jk, j) - C(m-jk-2, j-2)].
/// Negative powers of two are kept as exact rationals; the total must be an
/// integer.
inline BigInt cooper_howard(long k, long m) {
  require_k(k);
  if (m < 2) throw DomainError("closed form needs m >= 2");
  BigRat total(pow2(static_cast<unsigned long>(m - 2)));
  const long j_max = (m + k) / (k + 1) - 1;
  for (long j = 1; j <= j_max; ++j) {
    BigInt c = binomial(m - j * k, j) - binomial(m - j * k - 2, j - 2);
    if (j % 2 == 1) c = -c;
    const long e = m - (k + 1) * j - 2;
    BigRat term(c);
    if (e >= 0) mpq_mul_2exp(term.get_mpq_t(), term.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
    else mpq_div_2exp(term.get_mpq_t(), term.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
    total += term;
  }
  total.canonicalize();
  if (total.get_den() != 1) {
    throw ConsistencyError("closed form total is not an integer for k=" + std::to_string(k) +
                           ", m=" + std::to_string(m));
  }
  return total.get_num();
}

struct GomezExpansion {
  BigRat main;        // 2^{m-2}(1 + d1 (k-m)/2^{k+1} + d2 f(k,m)/2^{2k+2})
  BigRat eta_bound;   // 4 m^3 / 2^{3k+3}
  BigRat eta_actual;  // F_m / 2^{m-2} - main / 2^{m-2}
};

/// Second-order expansion of F_m^(k) for m < 2^k with its exact remainder.
/// Throws ConsistencyError if the remainder violates |eta| < 4m^3/2^{3k+3}.
inline GomezExpansion gomez_expansion(long k, long m) {
  require_k(k);
  if (m < 2) throw DomainError("expansion needs m >= 2");
  if (k < 63 && m >= (1L << k)) throw DomainError("expansion needs m < 2^k");
  const BigRat scale(pow2(static_cast<unsigned long>(m - 2)));
  BigRat bracket = 1;
  if (m > k + 1) {
    BigRat t(BigInt(k - m), pow2(static_cast<unsigned long>(k + 1)));
    t.canonicalize();
    bracket += t;
  }
  if (m > 2 * (k + 1)) {
    const long z = 2 * k - m;
    BigRat f(BigInt(z - 1) * BigInt(z + 2), 2);
    BigRat t = f / BigRat(pow2(static_cast<unsigned long>(2 * k + 2)));
    bracket += t;
  }
  GomezExpansion out;
  out.main = scale * bracket;
  out.eta_bound = BigRat(BigInt(4) * BigInt(m) * BigInt(m) * BigInt(m),
                         pow2(static_cast<unsigned long>(3 * k + 3)));
  out.eta_bound.canonicalize();
  out.eta_actual = BigRat(kfib(k, m)) / scale - bracket;
  if (abs(out.eta_actual) >= out.eta_bound) {
    throw ConsistencyError("expansion remainder bound violated at k=" + std::to_string(k) +
                           ", m=" + std::to_string(m));
  }
  return out;
}

/// |N_{Q(alpha)/Q}(2 f_k(alpha))| = 2^k (k-1)^2 / (2^{k+1} k^k - (k+1)^{k+1}).
inline BigRat norm_2fk(long k) {
  require_k(k);
  const unsigned long uk = static_cast<unsigned long>(k);
  BigInt num = pow2(uk) * BigInt(k - 1) * BigInt(k - 1);
  BigInt den = pow2(uk + 1) * ipow(BigInt(k), uk) - ipow(BigInt(k + 1), uk + 1);
  BigRat v(num, den);
  v.canonicalize();
  if (v >= 1) throw ConsistencyError("norm of 2 f_k(alpha) is not below 1 for k=" + std::to_string(k));
  return v;
}

/// Certified per-k constants.
struct KContext {
  long k = 0;
  Precision precision = 0;  // working precision of the balls
  RealBall alpha;           // dominant root of x^k - x^{k-1} - ... - 1
  RealBall fk_alpha;        // (alpha - 1) / (2 + (k + 1)(alpha - 2))
  RealBall chi;             // log(2 f_k(alpha)) / log(alpha)
};

/// f_k(z) = (z - 1) / (2 + (k + 1)(z - 2)).
inline RealBall fk_weight(long k, const RealBall& z) {
  const Precision p = z.precision();
  const RealBall one = RealBall::from_int(1, p), two = RealBall::from_int(2, p);
  return (z - one) / (two + RealBall::from_int(k + 1, p) * (z - two));
}

namespace detail {

enum class Bracketed { inside, outside, unknown };

inline Bracketed strictly_between(const RealBall& x, const BigRat& lo, const BigRat& hi) {
  const BigRat xl = x.exact_lower(), xh = x.exact_upper();
  if (lo < xl && xh < hi) return Bracketed::inside;
  if (xh <= lo || xl >= hi) return Bracketed::outside;
  return Bracketed::unknown;
}

inline void require_inside(const RealBall& x, const BigRat& lo, const BigRat& hi, const char* what,
                           long k) {
  switch (strictly_between(x, lo, hi)) {
    case Bracketed::inside:
      return;
    case Bracketed::outside:
      throw ConsistencyError(std::string(what) + " outside its proven range for k=" + std::to_string(k));
    case Bracketed::unknown:
      throw PrecisionEscalation(std::string(what) + " range not certified for k=" + std::to_string(k));
  }
}

inline KContext kcontext_at(long k, Precision work) {
  KContext ctx;
  ctx.k = k;
  ctx.precision = work;
  const BigRat lo = BigRat(2) * (BigRat(1) - BigRat(1, pow2(static_cast<unsigned long>(k))));
  const BigRat hi = 2;
  BigRat target(1, pow2(static_cast<unsigned long>(work - 16)));
  ctx.alpha = refine_root(IntPoly::kbonacci_companion(static_cast<unsigned long>(k)), lo, hi, target,
                          work);
  ctx.fk_alpha = fk_weight(k, ctx.alpha);
  const RealBall two_f = RealBall::from_int(2, work) * ctx.fk_alpha;
  if (!two_f.certainly_positive()) throw PrecisionEscalation("2 f_k(alpha) sign not certified");
  ctx.chi = eval_log(two_f) / eval_log(ctx.alpha);

  require_inside(ctx.alpha, lo, hi, "alpha", k);
  require_inside(ctx.fk_alpha, BigRat(1, 2), BigRat(3, 4), "f_k(alpha)", k);
  require_inside(ctx.chi, 0, 1, "chi", k);
  return ctx;
}

}  // namespace detail

/// Guard bits added on top of the requested precision: log(2 f_k(alpha))
/// is of size about k 2^{-k}, so chi loses roughly k bits to cancellation.
inline Precision kcontext_guard_bits(long k) { return static_cast<Precision>(k) + 64; }

/// Certified dominant root, f_k(alpha) and chi for one k. The requested
/// precision is the relative accuracy wanted for chi; the working precision
/// escalates (doubling) until every range invariant is certified.
inline KContext kcontext(long k, Precision precision, Precision cap = 8192) {
  require_k(k);
  PrecisionPolicy policy{precision, cap, false};
  return escalate(policy, [k](Precision p) { return detail::kcontext_at(k, p + kcontext_guard_bits(k)); });
}

/// f_k(alpha) alpha^{m-1}, the dominant term of the Binet-like formula.
inline RealBall binet_dominant(const KContext& ctx, long m) {
  const RealBall a = ctx.alpha;
  if (m >= 1) return ctx.fk_alpha * eval_pow(a, static_cast<unsigned long>(m - 1));
  return ctx.fk_alpha / eval_pow(a, static_cast<unsigned long>(1 - m));
}

}  // namespace pellfib
