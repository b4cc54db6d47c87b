#pragma once

// Continued fractions of certified reals and the Dujella-Petho reduction.

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pellfib/ball.hpp"
#include "pellfib/bigint.hpp"
#include "pellfib/errors.hpp"
#include "pellfib/kfib.hpp"
#include "pellfib/precision.hpp"

namespace pellfib {

/// Evaluates a fixed real number as a ball at the requested precision.
using RealProducer = std::function<RealBall(Precision)>;

inline RealProducer constant_producer(BigRat value) {
  return [v = std::move(value)](Precision p) { return RealBall::from_rational(v, p); };
}

struct CFExpansion {
  std::vector<BigInt> quotients;  // a_0, a_1, ..., a_L
  std::vector<BigInt> p;          // convergent numerators p_0..p_L
  std::vector<BigInt> q;          // convergent denominators q_0..q_L
  bool terminated = false;        // the real is a rational whose expansion ended
  Precision precision = 0;        // precision at which the prefix was certified

  long certified_depth() const { return static_cast<long>(quotients.size()) - 1; }
  BigRat convergent(long j) const {
    BigRat r(p.at(static_cast<std::size_t>(j)), q.at(static_cast<std::size_t>(j)));
    r.canonicalize();
    return r;
  }
};

struct CertifiedPrefix {
  std::vector<BigInt> quotients;
  bool terminated = false;
  bool operator==(const CertifiedPrefix&) const = default;
};

/// Partial quotients shared by every real in the ball, at most `max_terms`.
///
/// Both rational endpoints are expanded in lockstep; a_n is emitted only
/// when both endpoints agree on it and both still have a later term, which
/// places them (and everything between them) in the same open cylinder.
inline CertifiedPrefix certified_cf_prefix(const RealBall& x, std::size_t max_terms) {
  CertifiedPrefix out;
  BigRat lo = x.exact_lower(), hi = x.exact_upper();
  BigInt ln = lo.get_num(), ld = lo.get_den(), hn = hi.get_num(), hd = hi.get_den();
  const bool exact = (lo == hi);
  BigInt a, b, ra, rb;
  while (out.quotients.size() < max_terms) {
    mpz_fdiv_qr(a.get_mpz_t(), ra.get_mpz_t(), ln.get_mpz_t(), ld.get_mpz_t());
    if (exact) {
      out.quotients.push_back(a);
      if (ra == 0) {
        out.terminated = true;
        break;
      }
      ln = ld;
      ld = ra;
      continue;
    }
    mpz_fdiv_qr(b.get_mpz_t(), rb.get_mpz_t(), hn.get_mpz_t(), hd.get_mpz_t());
    if (a != b || ra == 0 || rb == 0) break;
    out.quotients.push_back(a);
    ln = ld;
    ld = ra;
    hn = hd;
    hd = rb;
  }
  return out;
}

inline CFExpansion make_expansion(std::vector<BigInt> quotients, bool terminated, Precision prec) {
  CFExpansion cf;
  cf.terminated = terminated;
  cf.precision = prec;
  // Seeds p_{-2} = 0, p_{-1} = 1, q_{-2} = 1, q_{-1} = 0.
  BigInt pm2 = 0, pm1 = 1, qm2 = 1, qm1 = 0;
  for (std::size_t j = 0; j < quotients.size(); ++j) {
    const BigInt& a = quotients[j];
    if (j > 0 && a < 1) throw ConsistencyError("partial quotient below 1");
    BigInt pn = a * pm1 + pm2, qn = a * qm1 + qm2;
    pm2 = std::move(pm1);
    pm1 = pn;
    qm2 = std::move(qm1);
    qm1 = qn;
    cf.p.push_back(std::move(pn));
    cf.q.push_back(std::move(qn));
  }
  cf.quotients = std::move(quotients);
  return cf;
}

/// Certified partial quotients a_0..a_depth of the real produced by `tau`.
/// A prefix is accepted once the ball endpoints certify it (and, with dual
/// checking, the next precision rung reproduces it). A real certified to
/// be rational may end early with `terminated` set.
inline CFExpansion cf_expand(const RealProducer& tau, long depth, const PrecisionPolicy& policy = {}) {
  if (depth < 0) throw DomainError("depth must be nonnegative");
  const std::size_t want = static_cast<std::size_t>(depth) + 1;
  Precision used = 0;
  CertifiedPrefix prefix = escalate_certified(
      policy,
      [&](Precision p) {
        CertifiedPrefix pre = certified_cf_prefix(tau(p), want);
        if (!pre.terminated && pre.quotients.size() < want) {
          throw PrecisionEscalation("continued fraction certified only to depth " +
                                    std::to_string(static_cast<long>(pre.quotients.size()) - 1));
        }
        return pre;
      },
      &used);
  return make_expansion(std::move(prefix.quotients), prefix.terminated, used);
}

/// Index j with x/y = p_j/q_j when |tau - x/y| < 1/(2y^2) is certified,
/// nullopt when that inequality is certified false.
inline std::optional<long> legendre_locate(const RealProducer& tau, const BigInt& x, const BigInt& y,
                                           const PrecisionPolicy& policy = {}) {
  if (y < 1) throw DomainError("denominator must be positive");
  BigRat target(x, y);
  target.canonicalize();
  const BigRat bound(BigInt(1), BigInt(2 * y * y));
  const bool close = escalate(policy, [&](Precision p) {
    const RealBall diff = eval_abs(tau(p) - RealBall::from_rational(target, p + 64));
    if (diff.exact_upper() < bound) return true;
    if (diff.exact_lower() >= bound) return false;
    throw PrecisionEscalation("Legendre inequality not decided");
  });
  if (!close) return std::nullopt;
  const BigInt& yr = target.get_den();
  for (long depth = 8;; depth *= 2) {
    CFExpansion cf = cf_expand(tau, depth, policy);
    for (long j = 0; j <= cf.certified_depth(); ++j) {
      if (cf.q[static_cast<std::size_t>(j)] > yr) {
        throw ConsistencyError("close rational approximation is not a convergent");
      }
      if (cf.convergent(j) == target) return j;
    }
    if (cf.terminated) throw ConsistencyError("close rational approximation is not a convergent");
  }
}

/// Data of the inequality 0 < |u tau - v + mu| < A B^{-w}, u <= M.
struct ReductionInstance {
  RealProducer tau;
  RealProducer mu;
  RealProducer A;
  RealProducer B;
  BigInt M;
};

struct ReductionOutcome {
  bool success = false;
  long q_index = -1;        // convergent index actually used
  BigInt q_used;            // its denominator q > 6M
  RealBall epsilon;         // ||mu q|| - M ||tau q||
  BigInt w_bound;           // 1 + floor(log(A q / epsilon) / log B)
  long attempts = 0;        // convergents tried
  Precision precision = 0;  // precision of the accepted evaluation
  std::string failure;      // reason when !success
};

struct DujellaPethoOptions {
  long ladder = 200;  // convergents tried past the requested index
  PrecisionPolicy policy{};
};

namespace detail {

enum class EpsilonStatus { positive, nonpositive };

struct EpsilonEval {
  EpsilonStatus status = EpsilonStatus::nonpositive;
  BigInt w_bound;
  bool operator==(const EpsilonEval& o) const { return status == o.status && w_bound == o.w_bound; }
};

}  // namespace detail

/// Dujella-Petho reduction: with q the denominator of a convergent of tau
/// with q > 6M and epsilon = ||mu q|| - M ||tau q|| > 0, the inequality has
/// no solution with u <= M and w >= log(A q / epsilon) / log B.
///
/// Starts at convergent `q_index` (advancing to the first one with q > 6M)
/// and walks up to `ladder` further convergents while epsilon is not
/// certified positive.
inline ReductionOutcome dujella_petho(const ReductionInstance& inst, long q_index,
                                      const DujellaPethoOptions& opts = {}) {
  if (inst.M < 1) throw DomainError("M must be at least 1");
  if (q_index < 0) throw DomainError("convergent index must be nonnegative");
  {
    const RealBall mu0 = inst.mu(opts.policy.start);
    if (mu0.is_exact() && mpfr_zero_p(mu0.midpoint().get())) {
      throw DomainError("reduction lemma does not apply when mu = 0");
    }
    const RealBall a0 = inst.A(opts.policy.start), b0 = inst.B(opts.policy.start);
    if (!a0.certainly_positive()) throw DomainError("A must be positive");
    if (!(b0 - RealBall::from_int(1, b0.precision())).certainly_positive()) {
      throw DomainError("B must exceed 1");
    }
  }
  const BigInt six_m = 6 * inst.M;
  ReductionOutcome out;
  CFExpansion cf;
  long j = q_index;
  const long last = q_index + opts.ladder;
  std::string last_failure = "no convergent tried";
  while (j <= last) {
    if (j > cf.certified_depth()) {
      cf = cf_expand(inst.tau, std::max(j, 2 * cf.certified_depth() + 2), opts.policy);
      if (j > cf.certified_depth()) {
        out.failure = "tau is rational: expansion ended at depth " + std::to_string(cf.certified_depth());
        return out;
      }
    }
    const BigInt& q = cf.q[static_cast<std::size_t>(j)];
    if (q <= six_m) {
      ++j;
      continue;
    }
    ++out.attempts;
    std::vector<std::pair<Precision, RealBall>> eps_at;
    Precision used = 0;
    PrecisionPolicy eps_policy = opts.policy;
    eps_policy.start = std::max(eps_policy.start, std::min(cf.precision, eps_policy.cap));
    try {
      const detail::EpsilonEval ev = escalate_certified(eps_policy, [&](Precision p) {
        const RealBall qb = RealBall::from_int(q, p + 64);
        const NearestDistance dm = certified_nearest_distance(inst.mu(p) * qb);
        const NearestDistance dt = certified_nearest_distance(inst.tau(p) * qb);
        if (dm.ambiguous || dt.ambiguous) throw PrecisionEscalation("nearest integer not determined");
        const RealBall eps = dm.distance - RealBall::from_int(inst.M, p + 64) * dt.distance;
        detail::EpsilonEval r;
        if (eps.certainly_positive()) {
          const RealBall w = eval_log(inst.A(p) * qb / eps) / eval_log(inst.B(p));
          const auto fl = certified_floor(w);
          if (!fl) throw PrecisionEscalation("w bound floor not determined");
          r.status = detail::EpsilonStatus::positive;
          r.w_bound = *fl + 1;
        } else if (mpfr_sgn(eps.upper().get()) <= 0) {
          r.status = detail::EpsilonStatus::nonpositive;
        } else {
          throw PrecisionEscalation("sign of epsilon not determined");
        }
        eps_at.emplace_back(p, eps);
        return r;
      }, &used);
      if (ev.status == detail::EpsilonStatus::positive) {
        out.success = true;
        out.q_index = j;
        out.q_used = q;
        for (const auto& [p, e] : eps_at) {
          if (p == used) out.epsilon = e;
        }
        out.w_bound = ev.w_bound;
        out.precision = used;
        out.failure.clear();
        return out;
      }
      last_failure = "epsilon <= 0 at convergent " + std::to_string(j);
    } catch (const PrecisionCapExceeded& e) {
      last_failure = "epsilon undecided at convergent " + std::to_string(j) + ": " + e.what();
    }
    ++j;
  }
  out.failure = "ladder exhausted (" + last_failure + ")";
  return out;
}

/// chi_k = log(2 f_k(alpha)) / log(alpha), certified in (0, 1).
inline const RealBall& chi(const KContext& ctx) { return ctx.chi; }

/// chi_k evaluated on demand at any precision.
inline RealProducer chi_producer(long k) {
  return [k](Precision p) { return kcontext(k, p).chi; };
}

}  // namespace pellfib
