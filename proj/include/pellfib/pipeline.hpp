#pragma once

// Solutions of x_n = F_m^(k): exactly verified records, the two parametric
// families, the small-x1 enumeration and the Gamma inequality check.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "pellfib/ball.hpp"
#include "pellfib/bigint.hpp"
#include "pellfib/errors.hpp"
#include "pellfib/kfib.hpp"
#include "pellfib/parallel.hpp"
#include "pellfib/pell.hpp"
#include "pellfib/precision.hpp"

namespace pellfib {

enum class Provenance { family_i, family_ii, sporadic_n1, unclassified };

inline const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::family_i: return "family-i";
    case Provenance::family_ii: return "family-ii";
    case Provenance::sporadic_n1: return "sporadic-n1";
    case Provenance::unclassified: return "unclassified";
  }
  return "?";
}

/// x_n = F_m^(k) for the orbit (x1, epsilon). Only `make` creates records,
/// and it checks both sides exactly.
class SolutionRecord {
 public:
  static SolutionRecord make(long k, long n, long m, const BigInt& x1, int epsilon, Provenance provenance,
                             long witnesses = 1) {
    if (n < 1) throw DomainError("n must be at least 1");
    if (m < 2) throw DomainError("m must be at least 2");
    const BigInt pell_side = xn(x1, epsilon, n);  // validates (x1, epsilon)
    const BigInt fib_side = kfib(k, m);
    if (pell_side != fib_side) {
      throw ConsistencyError("x_" + std::to_string(n) + " = " + to_decimal(pell_side) + " for x1 = " +
                             to_decimal(x1) + " differs from F_" + std::to_string(m) + "^(" +
                             std::to_string(k) + ") = " + to_decimal(fib_side));
    }
    if (x1 == 1 && epsilon == 1) throw DomainError("degenerate orbit (1, +1)");
    SolutionRecord r;
    r.k_ = k;
    r.n_ = n;
    r.m_ = m;
    r.x1_ = x1;
    r.epsilon_ = epsilon;
    r.value_ = pell_side;
    r.provenance_ = provenance;
    r.witnesses_ = witnesses;
    return r;
  }

  long k() const { return k_; }
  long n() const { return n_; }
  long m() const { return m_; }
  const BigInt& x1() const { return x1_; }
  int epsilon() const { return epsilon_; }
  const BigInt& value() const { return value_; }
  Provenance provenance() const { return provenance_; }
  /// Number of (k, m) in the searched grid with F_m^(k) = value; (k, m) is
  /// the one with the smallest k.
  long witnesses() const { return witnesses_; }

  bool operator==(const SolutionRecord& o) const {
    return std::tie(k_, n_, m_, x1_, epsilon_, value_, provenance_, witnesses_) ==
           std::tie(o.k_, o.n_, o.m_, o.x1_, o.epsilon_, o.value_, o.provenance_, o.witnesses_);
  }

 private:
  SolutionRecord() = default;
  long k_ = 0, n_ = 0, m_ = 0;
  BigInt x1_;
  int epsilon_ = 1;
  BigInt value_;
  Provenance provenance_ = Provenance::unclassified;
  long witnesses_ = 1;
};

namespace detail {

inline SolutionRecord family_record(long k, long n, long m, const BigInt& x1, Provenance p) {
  try {
    return SolutionRecord::make(k, n, m, x1, 1, p);
  } catch (const ConsistencyError& e) {
    throw FamilyViolation(std::string(to_string(p)) + ": " + e.what());
  }
}

}  // namespace detail

/// k odd >= 5: x1 = 2^{(k-1)/2} = F_{(k+3)/2}^(k) and x_2 = 2^k - 1 = F_{k+2}^(k).
inline std::pair<SolutionRecord, SolutionRecord> verify_family_i(long k) {
  if (k < 5 || k % 2 == 0) throw DomainError("family (i) needs odd k >= 5");
  const BigInt x1 = pow2(static_cast<unsigned long>((k - 1) / 2));
  const BigInt x2 = 2 * x1 * x1 - 1;
  if (x2 != pow2(static_cast<unsigned long>(k)) - 1) throw FamilyViolation("family-i: x_2 != 2^k - 1");
  return {detail::family_record(k, 1, (k + 3) / 2, x1, Provenance::family_i),
          detail::family_record(k, 2, k + 2, x1, Provenance::family_i)};
}

struct FamilyIIParams {
  long k, m1, m2;
};

inline FamilyIIParams family_ii_params(long a) {
  if (a < 1) throw DomainError("family (ii) needs a >= 1");
  if (a > 40) throw DomainError("family (ii) parameter too large");
  const long t = 1L << a;
  return {3 * 2 * t + 3 * a - 5, 3 * t + a - 1, 9 * t + 3 * a - 5};
}

/// k = 3 * 2^{a+1} + 3a - 5: x1 = 2^{m1-2} = F_{m1}^(k) and
/// x_3 = 4 x1^3 - 3 x1 = F_{m2}^(k).
inline std::pair<SolutionRecord, SolutionRecord> verify_family_ii(long a) {
  const FamilyIIParams f = family_ii_params(a);
  const BigInt x1 = pow2(static_cast<unsigned long>(f.m1 - 2));
  if (xn(x1, 1, 3) != 4 * x1 * x1 * x1 - 3 * x1) throw FamilyViolation("family-ii: x_3 != 4x1^3 - 3x1");
  return {detail::family_record(f.k, 1, f.m1, x1, Provenance::family_ii),
          detail::family_record(f.k, 3, f.m2, x1, Provenance::family_ii)};
}

namespace detail {

inline Provenance classify(long k, long n, long m, const BigInt& x1, int epsilon) {
  if (n == 1) return Provenance::sporadic_n1;
  if (epsilon != 1) return Provenance::unclassified;
  if (n == 2 && k >= 5 && k % 2 == 1 && m == k + 2 && x1 == pow2(static_cast<unsigned long>((k - 1) / 2))) {
    return Provenance::family_i;
  }
  if (n == 3) {
    for (long a = 1; a <= 40; ++a) {
      const FamilyIIParams f = family_ii_params(a);
      if (f.k > k) break;
      if (f.k == k && f.m2 == m && x1 == pow2(static_cast<unsigned long>(f.m1 - 2))) return Provenance::family_ii;
    }
  }
  return Provenance::unclassified;
}

struct OrbitPoint {
  long x1;
  int epsilon;
  long n;
};

}  // namespace detail

/// All x_n = F_m^(k) with x1 <= x1_max, 4 <= k <= k_max, 2 <= m <= m_max and
/// 1 <= n <= m. One record per (x1, epsilon, n), carrying the witness with
/// the smallest k and the number of witnesses. Sorted by (n, value, x1,
/// epsilon).
inline std::vector<SolutionRecord> enumerate_small_x1(long x1_max, long k_max, long m_max,
                                                      unsigned threads = 1) {
  if (x1_max < 1) throw DomainError("x1_max must be at least 1");
  if (k_max < 4) throw DomainError("k_max must be at least 4");
  if (m_max < 2) throw DomainError("m_max must be at least 2");

  // Index the orbit values up to 2^{m_max - 2} >= every F_m^(k) in the grid.
  const BigInt ceiling = pow2(static_cast<unsigned long>(m_max - 2));
  std::unordered_map<BigInt, std::vector<detail::OrbitPoint>, BigIntHash> index;
  for (long x1 = 1; x1 <= x1_max; ++x1) {
    for (int eps : {-1, 1}) {
      if (x1 == 1 && eps == 1) continue;
      BigInt prev = 1, cur = x1;
      for (long n = 1; cur <= ceiling; ++n) {
        index[cur].push_back({x1, eps, n});
        BigInt next = 2 * BigInt(x1) * cur - eps * prev;
        prev = std::move(cur);
        cur = std::move(next);
      }
    }
  }

  struct Hit {
    long k, m;
    detail::OrbitPoint at;
  };
  const std::size_t ks = static_cast<std::size_t>(k_max - 3);
  std::vector<std::vector<Hit>> per_k(ks);
  parallel_for(ks, threads, [&](std::size_t i) {
    const long k = static_cast<long>(i) + 4;
    const KFibTable table(k, m_max);
    for (long m = 2; m <= m_max; ++m) {
      auto it = index.find(table.at(m));
      if (it == index.end()) continue;
      for (const auto& pt : it->second) {
        if (pt.n <= m) per_k[i].push_back({k, m, pt});
      }
    }
  });

  struct Group {
    long k, m, count;
  };
  std::map<std::tuple<long, int, long>, Group> groups;  // (x1, eps, n)
  for (const auto& hits : per_k) {  // increasing k
    for (const auto& h : hits) {
      auto key = std::make_tuple(h.at.x1, h.at.epsilon, h.at.n);
      auto it = groups.find(key);
      if (it == groups.end()) groups.emplace(key, Group{h.k, h.m, 1});
      else ++it->second.count;
    }
  }

  std::vector<SolutionRecord> out;
  for (const auto& [key, g] : groups) {
    const auto& [x1, eps, n] = key;
    out.push_back(SolutionRecord::make(g.k, n, g.m, BigInt(x1), eps, detail::classify(g.k, n, g.m, BigInt(x1), eps),
                                       g.count));
  }
  std::sort(out.begin(), out.end(), [](const SolutionRecord& a, const SolutionRecord& b) {
    return std::make_tuple(a.n(), a.value(), a.x1(), a.epsilon()) <
           std::make_tuple(b.n(), b.value(), b.x1(), b.epsilon());
  });
  return out;
}

/// Certifies |n log(delta) - log(2 f_k(alpha)) - (m - 1) log(alpha)| < 3 / alpha^{m-1}.
/// Returns false only when the opposite inequality is certified.
inline bool check_gamma_inequality(const SolutionRecord& r, const PrecisionPolicy& policy = {}) {
  return escalate(policy, [&](Precision p) {
    const KContext ctx = kcontext(r.k(), p);
    const Precision w = ctx.precision;
    const RealBall log_delta = eval_log(pell_delta(r.x1(), r.epsilon(), w));
    const RealBall log_alpha = eval_log(ctx.alpha);
    const RealBall gamma = RealBall::from_int(r.n(), w) * log_delta -
                           eval_log(RealBall::from_int(2, w) * ctx.fk_alpha) -
                           RealBall::from_int(r.m() - 1, w) * log_alpha;
    const RealBall lhs = eval_abs(gamma);
    const RealBall rhs =
        RealBall::from_int(3, w) / eval_pow(ctx.alpha, static_cast<unsigned long>(r.m() - 1));
    if (mpfr_cmp(lhs.upper().get(), rhs.lower().get()) < 0) return true;
    if (mpfr_cmp(lhs.lower().get(), rhs.upper().get()) >= 0) return false;
    throw PrecisionEscalation("Gamma inequality not decided");
  });
}

}  // namespace pellfib
