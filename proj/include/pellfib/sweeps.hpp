#pragma once

// Grid sweeps over (k, m1, epsilon): continued-fraction quotient maxima,
// Dujella-Petho reductions and the modular sieve for x_b = F_m^(k).

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "pellfib/ball.hpp"
#include "pellfib/bigint.hpp"
#include "pellfib/errors.hpp"
#include "pellfib/kfib.hpp"
#include "pellfib/parallel.hpp"
#include "pellfib/pell.hpp"
#include "pellfib/precision.hpp"
#include "pellfib/reduction.hpp"

namespace pellfib {

struct SweepCell {
  long k = 0;
  long m1 = 0;
  int eps = 0;
  BigInt stat;
  bool ok = true;
  std::string detail;
  Precision precision = 0;
};

struct SweepReport {
  std::string name;
  std::string grid;
  BigInt stat;                   // extremal statistic over successful cells
  std::optional<BigInt> stat2;   // secondary statistic, sweep specific
  long cell_count = 0;
  long failures = 0;
  std::vector<SweepCell> cells;  // every cell with audit on, else failures only
  std::map<Precision, long> precision_profile;
  double seconds = 0;

  bool complete() const { return failures == 0; }
};

struct SweepOptions {
  unsigned threads = 1;
  bool audit = false;
  PrecisionPolicy policy{};
};

namespace detail {

inline SweepReport assemble(std::string name, std::string grid, std::vector<SweepCell> cells, bool audit,
                            std::chrono::steady_clock::time_point t0) {
  SweepReport r;
  r.name = std::move(name);
  r.grid = std::move(grid);
  r.cell_count = static_cast<long>(cells.size());
  bool any = false;
  for (auto& c : cells) {
    if (!c.ok) {
      ++r.failures;
    } else {
      if (!any || c.stat > r.stat) r.stat = c.stat;
      any = true;
      ++r.precision_profile[c.precision];
    }
    if (audit || !c.ok) r.cells.push_back(std::move(c));
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline std::string range(long lo, long hi) { return "[" + std::to_string(lo) + "," + std::to_string(hi) + "]"; }

}  // namespace detail

/// Q = max a_i^(k), 2 <= i <= depth, over the continued fractions of chi_k;
/// stat2 = max ceil(chi_k^{-1}), a certified upper bound for every chi_k^{-1}.
inline SweepReport sweep_chi_quotients(long k_min, long k_max, long depth, const SweepOptions& opts = {}) {
  if (k_min < 4 || k_max < k_min) throw DomainError("need 4 <= k_min <= k_max");
  if (depth < 2) throw DomainError("depth must be at least 2");
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t count = static_cast<std::size_t>(k_max - k_min + 1);
  std::vector<SweepCell> cells(count);
  std::vector<BigInt> inv_ceil(count);
  parallel_for(count, opts.threads, [&](std::size_t i) {
    SweepCell& c = cells[i];
    c.k = k_min + static_cast<long>(i);
    try {
      const CFExpansion cf = cf_expand(chi_producer(c.k), depth, opts.policy);
      long arg = -1;
      for (long j = 2; j <= cf.certified_depth(); ++j) {
        if (arg < 0 || cf.quotients[static_cast<std::size_t>(j)] > c.stat) {
          c.stat = cf.quotients[static_cast<std::size_t>(j)];
          arg = j;
        }
      }
      const RealBall inv = kcontext(c.k, opts.policy.start).chi.reciprocal();
      inv_ceil[i] = ceil_of(inv.exact_upper());
      c.precision = cf.precision;
      c.detail = "argmax=" + std::to_string(arg) + " chi_inv_ceil=" + to_decimal(inv_ceil[i]);
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail = e.what();
    }
  });
  std::optional<BigInt> inv_max;
  for (std::size_t i = 0; i < count; ++i) {
    if (cells[i].ok && (!inv_max || inv_ceil[i] > *inv_max)) inv_max = inv_ceil[i];
  }
  SweepReport r = detail::assemble("chi-quotients", "k=" + detail::range(k_min, k_max) + " depth=" +
                                                        std::to_string(depth),
                                   std::move(cells), opts.audit, t0);
  r.stat2 = inv_max;
  return r;
}

/// log(delta) / log(2) for delta = 2^{m1-2} + sqrt(2^{2(m1-2)} - epsilon).
inline RealProducer delta_log2_producer(long m1, int epsilon) {
  if (m1 < 2) throw DomainError("m1 must be at least 2");
  if (m1 == 2 && epsilon == 1) throw DomainError("degenerate orbit (1, +1)");
  const BigInt x1 = pow2(static_cast<unsigned long>(m1 - 2));
  return [x1, epsilon](Precision p) {
    const RealBall d = pell_delta(x1, epsilon, p);
    return eval_log(d) / eval_log(RealBall::from_int(2, p));
  };
}

/// Orbit signs for a given m1: m1 = 2 gives x1 = 1, where only epsilon = -1
/// is a valid orbit.
inline std::vector<int> orbit_signs(long m1) {
  if (m1 == 2) return {-1};
  return {-1, 1};
}

/// Largest partial quotient a_j, 0 <= j <= depth, of log(delta)/log(2) over
/// 2 <= m1 <= m1_max and both signs.
inline SweepReport sweep_delta_quotients(long m1_max, long depth, const SweepOptions& opts = {}) {
  if (m1_max < 2) throw DomainError("m1_max must be at least 2");
  if (depth < 1) throw DomainError("depth must be at least 1");
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<SweepCell> cells;
  for (long m1 = 2; m1 <= m1_max; ++m1) {
    for (int eps : orbit_signs(m1)) {
      SweepCell c;
      c.m1 = m1;
      c.eps = eps;
      cells.push_back(c);
    }
  }
  parallel_for(cells.size(), opts.threads, [&](std::size_t i) {
    SweepCell& c = cells[i];
    try {
      const CFExpansion cf = cf_expand(delta_log2_producer(c.m1, c.eps), depth, opts.policy);
      long arg = 0;
      c.stat = cf.quotients[0];
      for (long j = 1; j <= cf.certified_depth(); ++j) {
        if (cf.quotients[static_cast<std::size_t>(j)] > c.stat) {
          c.stat = cf.quotients[static_cast<std::size_t>(j)];
          arg = j;
        }
      }
      c.precision = cf.precision;
      c.detail = "argmax=" + std::to_string(arg);
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail = e.what();
    }
  });
  return detail::assemble("delta-quotients", "m1=" + detail::range(2, m1_max) + " depth=" + std::to_string(depth),
                          std::move(cells), opts.audit, t0);
}

/// 3 / log(48/25) and 48/25.
inline RealProducer dp_A_producer() {
  return [](Precision p) {
    return RealBall::from_int(3, p) / eval_log(RealBall::from_rational(BigRat(48, 25), p));
  };
}
inline RealProducer dp_B_producer() { return constant_producer(BigRat(48, 25)); }

/// Dujella-Petho data for n log(delta) - (m - 1) log(alpha) - log(2 f_k(alpha)):
/// tau = log(delta)/log(alpha), mu = chi_k, A = 3/log(1.92), B = 1.92.
/// `cache` holds certified k-contexts by requested precision; it must
/// outlive the returned instance and not be shared across threads.
inline ReductionInstance dp_instance(long k, long m1, int epsilon, const BigInt& M,
                                     std::map<Precision, KContext>& cache) {
  if (m1 < 2) throw DomainError("m1 must be at least 2");
  if (m1 == 2 && epsilon == 1) throw DomainError("degenerate orbit (1, +1)");
  auto ctx = [k, &cache](Precision p) -> const KContext& {
    auto it = cache.find(p);
    if (it == cache.end()) it = cache.emplace(p, kcontext(k, p)).first;
    return it->second;
  };
  const BigInt x1 = pow2(static_cast<unsigned long>(m1 - 2));
  ReductionInstance inst;
  inst.tau = [x1, epsilon, ctx](Precision p) {
    const KContext& c = ctx(p);
    return eval_log(pell_delta(x1, epsilon, c.precision)) / eval_log(c.alpha);
  };
  inst.mu = [ctx](Precision p) { return ctx(p).chi; };
  inst.A = dp_A_producer();
  inst.B = dp_B_producer();
  inst.M = M;
  return inst;
}

struct DpGrid {
  long k_min = 4, k_max = 100;
  long m1_min = 2, m1_max = 221;
  long q_index = 200;
  BigInt M;
  long ladder = 200;
};

/// Dujella-Petho reduction on every (k, m1, epsilon); stat = max w_bound.
inline SweepReport sweep_dp(const DpGrid& g, const SweepOptions& opts = {}) {
  if (g.k_min < 4 || g.k_max < g.k_min) throw DomainError("need 4 <= k_min <= k_max");
  if (g.m1_min < 2 || g.m1_max < g.m1_min) throw DomainError("need 2 <= m1_min <= m1_max");
  if (g.M < 1) throw DomainError("M must be at least 1");
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t ks = static_cast<std::size_t>(g.k_max - g.k_min + 1);
  std::vector<std::vector<SweepCell>> per_k(ks);
  DujellaPethoOptions dpo;
  dpo.ladder = g.ladder;
  dpo.policy = opts.policy;
  parallel_for(ks, opts.threads, [&](std::size_t i) {
    const long k = g.k_min + static_cast<long>(i);
    std::map<Precision, KContext> cache;
    for (long m1 = g.m1_min; m1 <= g.m1_max; ++m1) {
      for (int eps : orbit_signs(m1)) {
        SweepCell c;
        c.k = k;
        c.m1 = m1;
        c.eps = eps;
        try {
          const ReductionOutcome out = dujella_petho(dp_instance(k, m1, eps, g.M, cache), g.q_index, dpo);
          c.ok = out.success;
          if (out.success) {
            c.stat = out.w_bound;
            c.precision = out.precision;
            c.detail = "q_index=" + std::to_string(out.q_index) + " attempts=" + std::to_string(out.attempts);
          } else {
            c.detail = out.failure;
          }
        } catch (const std::exception& e) {
          c.ok = false;
          c.detail = e.what();
        }
        per_k[i].push_back(std::move(c));
      }
    }
  });
  std::vector<SweepCell> cells;
  for (auto& v : per_k) {
    for (auto& c : v) cells.push_back(std::move(c));
  }
  return detail::assemble("dp",
                          "k=" + detail::range(g.k_min, g.k_max) + " m1=" + detail::range(g.m1_min, g.m1_max) +
                              " q_index=" + std::to_string(g.q_index) + " M=" + to_decimal(g.M),
                          std::move(cells), opts.audit, t0);
}

/// {4, 6, 9} together with the primes p_3, ..., p_44 (5, ..., 193).
inline std::vector<long> paper_index_set() {
  std::vector<long> out = {4, 6, 9};
  long count = 0;
  for (long n = 2; count < 44; ++n) {
    bool prime = true;
    for (long d = 2; d * d <= n; ++d) {
      if (n % d == 0) {
        prime = false;
        break;
      }
    }
    if (!prime) continue;
    ++count;
    if (count >= 3) out.push_back(n);
  }
  return out;
}

struct SieveGrid {
  long k_min = 3, k_max = 100;
  long m_min = 2, m_max = 300;
  std::uint64_t modulus = 10'000'000'000ULL;
  std::vector<long> index_set = paper_index_set();
};

struct SieveSurvivor {
  BigInt y;
  long b;
  BigInt x1;
  int eps;
  bool exact;  // x_b = y holds over the integers
  long k, m;   // witness F_m^(k) = y with the smallest k
};

struct SieveResult {
  SweepReport report;  // stat = largest surviving y, stat2 = number of survivors
  std::vector<SieveSurvivor> survivors;
  long distinct_values = 0;
};

/// For every y = F_m^(k) in the grid and b in the index set, takes the
/// candidate x1 from the b-th root of y and keeps (y, b, x1, epsilon)
/// when x_b = y mod `modulus`. Survivors are rechecked exactly.
inline SieveResult mod_sieve(const SieveGrid& g, const SweepOptions& opts = {}) {
  if (g.modulus < 2) throw DomainError("modulus must be at least 2");
  if (g.index_set.empty()) throw DomainError("index set must be nonempty");
  for (long b : g.index_set) {
    if (b < 2) throw DomainError("indices must be at least 2");
  }
  if (g.k_min < 2 || g.k_max < g.k_min) throw DomainError("need 2 <= k_min <= k_max");
  if (g.m_min < 2 || g.m_max < g.m_min) throw DomainError("need 2 <= m_min <= m_max");
  const auto t0 = std::chrono::steady_clock::now();

  struct Witness {
    long k, m;
  };
  std::unordered_map<BigInt, Witness, BigIntHash> values;
  for (long k = g.k_min; k <= g.k_max; ++k) {
    const KFibTable table(k, g.m_max);
    for (long m = g.m_min; m <= g.m_max; ++m) values.try_emplace(table.at(m), Witness{k, m});
  }
  std::vector<std::pair<BigInt, Witness>> ys(values.begin(), values.end());
  std::sort(ys.begin(), ys.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  values.clear();

  std::vector<std::vector<SieveSurvivor>> found(ys.size());
  parallel_for(ys.size(), opts.threads, [&](std::size_t i) {
    const BigInt& y = ys[i].first;
    const std::uint64_t y_mod = mod_u64(y, g.modulus);
    for (long b : g.index_set) {
      const BigInt x1 = x1_from_bth_root(y, static_cast<unsigned long>(b));
      if (x1 < 1) continue;
      const std::uint64_t x1_mod = mod_u64(x1, g.modulus);
      for (int eps : {-1, 1}) {
        if (x1 == 1 && eps == 1) continue;
        if (xn_mod(x1_mod, eps, b, g.modulus) != y_mod) continue;
        found[i].push_back({y, b, x1, eps, xn(x1, eps, b) == y, ys[i].second.k, ys[i].second.m});
      }
    }
  });

  SieveResult res;
  res.distinct_values = static_cast<long>(ys.size());
  std::vector<SweepCell> cells;
  for (auto& v : found) {
    for (auto& s : v) {
      SweepCell c;
      c.k = s.k;
      c.m1 = s.m;
      c.eps = s.eps;
      c.stat = s.y;
      c.detail = "b=" + std::to_string(s.b) + " x1=" + to_decimal(s.x1) + (s.exact ? " exact" : " modular-only");
      cells.push_back(std::move(c));
      res.survivors.push_back(std::move(s));
    }
  }
  std::string idx;
  for (long b : g.index_set) idx += (idx.empty() ? "" : ",") + std::to_string(b);
  res.report = detail::assemble("modsieve",
                                "k=" + detail::range(g.k_min, g.k_max) + " m=" + detail::range(g.m_min, g.m_max) +
                                    " modulus=" + std::to_string(g.modulus) + " B={" + idx + "}",
                                std::move(cells), true, t0);
  res.report.stat2 = BigInt(static_cast<long>(res.survivors.size()));
  if (!opts.audit) res.report.cells.clear();
  return res;
}

}  // namespace pellfib
