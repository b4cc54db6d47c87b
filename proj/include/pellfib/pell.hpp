#pragma once

// Solutions of x^2 - d y^2 = +-1. An orbit is fixed by (x1, epsilon) with
// epsilon = x1^2 - d y1^2; every later x-coordinate follows from
// 2 x_n = delta^n + (epsilon / delta)^n, delta = x1 + sqrt(x1^2 - epsilon).

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pellfib/ball.hpp"
#include "pellfib/bigint.hpp"
#include "pellfib/errors.hpp"

namespace pellfib {

/// Largest trial divisor used for square-free checks and decompositions.
inline constexpr unsigned long kTrialDivisionBound = 1'000'000;

namespace detail {

inline const std::vector<unsigned long>& small_primes() {
  static const std::vector<unsigned long> primes = [] {
    std::vector<bool> composite(kTrialDivisionBound + 1, false);
    std::vector<unsigned long> out;
    for (unsigned long i = 2; i <= kTrialDivisionBound; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (unsigned long j = i * i; j <= kTrialDivisionBound; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

}  // namespace detail

struct SquarefreeDecomposition {
  BigInt d;  // square-free part
  BigInt y;  // n = d * y^2
};

/// n = d y^2 with d square-free, by trial division. Returns nullopt when
/// the cofactor left after dividing out primes up to the trial bound can
/// not be classified.
inline std::optional<SquarefreeDecomposition> squarefree_decomposition(const BigInt& n) {
  if (n < 1) throw DomainError("square-free decomposition needs n >= 1");
  BigInt rest = n, d = 1, y = 1;
  for (unsigned long p : detail::small_primes()) {
    if (BigInt(p) * p > rest) break;
    unsigned long e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++e;
    }
    for (unsigned long i = 0; i < e / 2; ++i) y *= p;
    if (e % 2 == 1) d *= p;
  }
  if (rest > 1) {
    const BigInt bound(kTrialDivisionBound);
    if (rest <= bound * bound) {
      d *= rest;  // prime
    } else if (mpz_perfect_square_p(rest.get_mpz_t())) {
      BigInt r;
      mpz_sqrt(r.get_mpz_t(), rest.get_mpz_t());
      if (r > bound * bound) return std::nullopt;  // root may be composite
      y *= r;
    } else {
      return std::nullopt;
    }
  }
  return SquarefreeDecomposition{d, y};
}

/// Square-free test for d up to the square of the trial bound.
inline bool is_squarefree(const BigInt& d) {
  const BigInt bound(kTrialDivisionBound);
  if (d > bound * bound) throw DomainError("square-free check limited to d <= 10^12");
  auto dec = squarefree_decomposition(d);
  return dec && dec->y == 1;
}

struct PellOrbit {
  BigInt x1;
  int epsilon = 1;
  std::optional<BigInt> y1;
  std::optional<BigInt> d;
  RealBall delta;  // x1 + sqrt(x1^2 - epsilon)
};

inline RealBall pell_delta(const BigInt& x1, int epsilon, Precision prec) {
  const RealBall x = RealBall::from_int(x1, prec);
  return x + eval_sqrt(RealBall::from_int(BigInt(x1 * x1 - epsilon), prec));
}

/// Orbit generated by (x1, epsilon). With `decompose`, d and y1 are read off
/// the square-free decomposition x1^2 - epsilon = d y1^2 when it is found.
inline PellOrbit orbit_from_x1(const BigInt& x1, int epsilon, Precision prec = 350,
                               bool decompose = false) {
  if (x1 < 1) throw DomainError("x1 must be positive");
  if (epsilon != 1 && epsilon != -1) throw DomainError("epsilon must be +1 or -1");
  if (x1 == 1 && epsilon == 1) throw DomainError("degenerate orbit (x1, epsilon) = (1, +1): y1 = 0");
  PellOrbit o;
  o.x1 = x1;
  o.epsilon = epsilon;
  o.delta = pell_delta(x1, epsilon, prec);
  if (decompose) {
    if (auto dec = squarefree_decomposition(BigInt(x1 * x1 - epsilon))) {
      o.d = dec->d;
      o.y1 = dec->y;
    }
  }
  return o;
}

/// Minimal positive solution of x^2 - d y^2 = +-1, from the continued
/// fraction of sqrt(d).
inline PellOrbit fundamental_solution(const BigInt& d, Precision prec = 350) {
  if (d < 2) throw DomainError("d must be at least 2");
  if (mpz_perfect_square_p(d.get_mpz_t())) throw DomainError("d is a perfect square");
  if (!is_squarefree(d)) throw DomainError("d is not square-free");
  BigInt a0;
  mpz_sqrt(a0.get_mpz_t(), d.get_mpz_t());
  BigInt m = 0, den = 1, a = a0;
  BigInt p_prev = 1, p = a0, q_prev = 0, q = 1;
  long index = 0;  // p / q is the index-th convergent
  for (;;) {
    const BigInt norm = p * p - d * q * q;
    if (norm == 1 || norm == -1) {
      PellOrbit o;
      o.x1 = p;
      o.y1 = q;
      o.d = d;
      o.epsilon = static_cast<int>(norm.get_si());
      o.delta = pell_delta(p, o.epsilon, prec);
      // The first unit convergent has index (period length - 1); the norm
      // is -1 exactly for odd periods.
      if ((o.epsilon == -1) != (index % 2 == 0)) {
        throw ConsistencyError("period parity disagrees with the sign of the norm");
      }
      return o;
    }
    m = den * a - m;
    den = (d - m * m) / den;
    a = (a0 + m) / den;
    ++index;
    BigInt p_next = a * p + p_prev, q_next = a * q + q_prev;
    p_prev = std::move(p);
    p = std::move(p_next);
    q_prev = std::move(q);
    q = std::move(q_next);
  }
}

/// Exact x_n (x_0 = 1) by the doubling ladder
/// x_{2j} = 2 x_j^2 - eps^j, x_{2j+1} = 2 x_j x_{j+1} - eps^j x_1.
inline BigInt xn(const BigInt& x1, int epsilon, long n) {
  if (n < 0) throw DomainError("n must be nonnegative");
  if (n == 0) return 1;
  BigInt lo = 1, hi = x1;  // (x_j, x_{j+1}) with j = 0
  long j = 0;
  for (int bit = 62; bit >= 0; --bit) {
    if (j == 0 && ((n >> bit) & 1L) == 0) continue;
    const int sign_j = (epsilon == -1 && (j % 2 == 1)) ? -1 : 1;
    BigInt even = 2 * lo * lo - sign_j;
    BigInt odd = 2 * lo * hi - sign_j * x1;
    if ((n >> bit) & 1L) {
      // (x_{2j+1}, x_{2j+2}); x_{2j+2} = 2 x_{j+1}^2 - eps^{j+1}
      BigInt next = 2 * hi * hi - sign_j * epsilon;
      lo = std::move(odd);
      hi = std::move(next);
      j = 2 * j + 1;
    } else {
      lo = std::move(even);
      hi = std::move(odd);
      j = 2 * j;
    }
  }
  return lo;
}

inline BigInt xn(const PellOrbit& orbit, long n) { return xn(orbit.x1, orbit.epsilon, n); }

/// y_n from y_0 = 0, y_1 = y1, y_{n+1} = 2 x1 y_n - eps y_{n-1}.
inline BigInt yn(const BigInt& x1, int epsilon, const BigInt& y1, long n) {
  if (n < 0) throw DomainError("n must be nonnegative");
  BigInt prev = 0, cur = y1;
  if (n == 0) return prev;
  for (long i = 1; i < n; ++i) {
    BigInt next = 2 * x1 * cur - epsilon * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

}  // namespace detail

/// x_n mod `modulus` by x_{n+1} = 2 x1 x_n - eps x_{n-1}, every step reduced.
inline std::uint64_t xn_mod(std::uint64_t x1_residue, int epsilon, long n, std::uint64_t modulus) {
  if (modulus < 2) throw DomainError("modulus must be at least 2");
  if (modulus > (std::uint64_t{1} << 62)) throw DomainError("modulus must be below 2^62");
  if (n < 0) throw DomainError("n must be nonnegative");
  const std::uint64_t x1 = x1_residue % modulus;
  std::uint64_t prev = 1 % modulus, cur = x1;
  if (n == 0) return prev;
  const std::uint64_t two_x1 = detail::mulmod(2, x1, modulus);
  for (long i = 1; i < n; ++i) {
    std::uint64_t next = detail::mulmod(two_x1, cur, modulus);
    if (epsilon == 1) {
      next = (next + modulus - prev) % modulus;
    } else {
      next = (next + prev) % modulus;
    }
    prev = cur;
    cur = next;
  }
  return cur;
}

inline std::uint64_t xn_mod(const PellOrbit& orbit, long n, std::uint64_t modulus) {
  return xn_mod(mod_u64(orbit.x1, modulus), orbit.epsilon, n, modulus);
}

/// D_n(x, nu) = sum_{i=0}^{n/2} n/(n-i) C(n-i, i) (-nu)^i x^{n-2i}.
inline BigInt dickson(long n, const BigInt& x, int nu) {
  if (n < 1) throw DomainError("Dickson index must be at least 1");
  BigInt sum = 0;
  for (long i = 0; i <= n / 2; ++i) {
    BigInt c = BigInt(n) * binomial(n - i, i);
    mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(n - i));
    if (i % 2 == 1 && nu == 1) c = -c;  // (-nu)^i
    sum += c * ipow(x, static_cast<unsigned long>(n - 2 * i));
  }
  return sum;
}

/// True iff v has no prime factor above 5 (1 counts as 5-smooth).
inline bool is_5_smooth(const BigInt& v) {
  if (v < 1) throw DomainError("smoothness test needs v >= 1");
  BigInt r = v;
  for (unsigned long p : {2UL, 3UL, 5UL}) {
    while (mpz_divisible_ui_p(r.get_mpz_t(), p)) mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), p);
  }
  return r == 1;
}

/// Candidate x1 = floor((1/2)((2y + 1/2)^{1/b} + 1/2)) for x_b = y, in
/// exact integer arithmetic: x1 is the largest t with
/// (4t - 1)^b <= 2^{b-1} (4y + 1), i.e. t = floor((s + 1) / 4) with
/// s = floor((2^{b-1}(4y + 1))^{1/b}).
inline BigInt x1_from_bth_root(const BigInt& y, unsigned long b) {
  if (y < 1) throw DomainError("y must be positive");
  if (b < 2) throw DomainError("b must be at least 2");
  BigInt n = pow2(b - 1) * (4 * y + 1);
  BigInt s;
  mpz_root(s.get_mpz_t(), n.get_mpz_t(), b);
  BigInt t = (s + 1);
  mpz_fdiv_q_2exp(t.get_mpz_t(), t.get_mpz_t(), 2);
  return t;
}

}  // namespace pellfib
