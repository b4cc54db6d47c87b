#pragma once

// Command-line front end. run_command parses argv, runs one subcommand and
// returns the process exit code: 0 success, 1 verification failure or I/O
// error, 2 usage error.

#include <algorithm>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pellfib/kfib.hpp"
#include "pellfib/linforms.hpp"
#include "pellfib/pell.hpp"
#include "pellfib/pipeline.hpp"
#include "pellfib/reduction.hpp"
#include "pellfib/report.hpp"
#include "pellfib/sweeps.hpp"

namespace pellfib {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  long precision = 350;
  unsigned threads = default_threads();
  std::string out;  // output prefix; empty for stdout only
  bool audit = false;
};

/// Reference values the paper-scale sweeps are compared against.
struct PaperConstants {
  static constexpr long Q = 433576;
  static constexpr long delta_max = 1033566;
  static constexpr long dp_w_bound = 1049;
};

namespace cli_detail {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline BigInt parse_bigint(const std::string& s) {
  // Accepts plain integers and mantissa-exponent forms such as 13e27.
  const auto e = s.find_first_of("eE");
  try {
    if (e == std::string::npos) return BigInt(s, 10);
    BigInt mant(s.substr(0, e), 10);
    const long exp10 = std::stol(s.substr(e + 1));
    if (exp10 < 0) throw UsageError("negative exponent in integer " + s);
    BigInt p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(exp10));
    return mant * p;
  } catch (const std::invalid_argument&) {
    throw UsageError("not an integer: " + s);
  }
}

inline std::vector<long> parse_index_set(const std::string& s) {
  std::vector<long> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stol(item));
    } catch (const std::exception&) {
      throw UsageError("bad index set entry: " + item);
    }
  }
  return out;
}

inline SweepOptions sweep_options(const RunConfig& cfg) {
  SweepOptions o;
  o.threads = cfg.threads;
  o.audit = cfg.audit;
  o.policy.start = cfg.precision;
  return o;
}

inline void print_summary(std::ostream& out, const SweepReport& r) {
  out << "sweep=" << r.name << " grid=" << r.grid << "\n";
  out << "cells=" << r.cell_count << " failures=" << r.failures << " seconds=" << r.seconds << "\n";
  out << "precision profile:";
  for (const auto& [p, n] : r.precision_profile) out << " " << p << "x" << n;
  out << "\n";
  for (const auto& c : r.cells) {
    if (!c.ok) out << "FAILED k=" << c.k << " m1=" << c.m1 << " eps=" << c.eps << ": " << c.detail << "\n";
  }
}

inline int finish(std::ostream& out, std::ostream& err, const RunConfig& cfg, const SweepReport& r, bool verified) {
  if (!cfg.out.empty()) {
    try {
      emit_report(r, cfg.out, cfg.audit);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kExitFailure;
    }
    out << "wrote " << cfg.out << ".csv" << (cfg.audit ? " and " + cfg.out + ".jsonl" : std::string()) << "\n";
  }
  return verified && r.complete() ? kExitOk : kExitFailure;
}

inline RealProducer target_producer(const std::string& of, long k, long m1, int eps,
                                    std::map<Precision, KContext>& cache) {
  if (of == "chi") return chi_producer(k);
  if (of == "delta") return delta_log2_producer(m1, eps);
  if (of == "tau") return dp_instance(k, m1, eps, BigInt(1), cache).tau;
  throw UsageError("unknown target " + of);
}

}  // namespace cli_detail

inline int run_command(const std::vector<std::string>& argv, std::ostream& out = std::cout,
                       std::ostream& err = std::cerr) {
  using namespace cli_detail;
  RunConfig cfg;
  CLI::App app{"Pell equations against k-generalized Fibonacci numbers", "pellfib"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--precision", cfg.precision, "starting working precision in bits")->check(CLI::Range(64L, 8192L));
  app.add_option("--threads", cfg.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out", cfg.out, "output prefix for <prefix>.csv and <prefix>.jsonl");
  app.add_flag("--audit", cfg.audit, "keep and emit per-cell records");

  std::function<int()> action;

  // kfib
  long kf_k = 0, kf_m = 0;
  std::string kf_method = "recurrence";
  auto* kf = app.add_subcommand("kfib", "F_m^(k)");
  kf->add_option("--k", kf_k)->required();
  kf->add_option("--m", kf_m)->required();
  kf->add_option("--method", kf_method)->check(CLI::IsMember({"recurrence", "cooper-howard", "binet"}));
  kf->callback([&] {
    action = [&] {
      if (kf_method == "recurrence") {
        out << to_decimal(kfib(kf_k, kf_m)) << "\n";
      } else if (kf_method == "cooper-howard") {
        out << to_decimal(cooper_howard(kf_k, kf_m)) << "\n";
      } else {
        if (kf_m < 1) throw UsageError("binet method needs m >= 1");
        const KContext ctx = kcontext(kf_k, static_cast<Precision>(cfg.precision) + kf_m);
        const RealBall v = binet_dominant(ctx, kf_m);
        const auto d = certified_nearest_distance(v);
        if (d.ambiguous) throw PrecisionCapExceeded("nearest integer not certified");
        out << to_decimal(floor_of(v.exact_lower() + BigRat(1, 2))) << "\n";
      }
      return kExitOk;
    };
  });

  // pell
  auto* pell = app.add_subcommand("pell", "Pell equation x^2 - d y^2 = +-1");
  pell->require_subcommand(1);
  std::string pell_d;
  auto* pf = pell->add_subcommand("fundamental", "minimal solution for square-free d");
  pf->add_option("--d", pell_d)->required();
  pf->callback([&] {
    action = [&] {
      const PellOrbit o = fundamental_solution(parse_bigint(pell_d));
      out << "x1=" << to_decimal(o.x1) << " y1=" << to_decimal(*o.y1) << " eps=" << o.epsilon << "\n";
      return kExitOk;
    };
  });
  std::string px_x1, px_mod;
  int px_eps = 1;
  long px_n = 1;
  auto* px = pell->add_subcommand("xn", "x_n of the orbit (x1, eps)");
  px->add_option("--x1", px_x1)->required();
  px->add_option("--eps", px_eps)->required()->check(CLI::IsMember({-1, 1}));
  px->add_option("--n", px_n)->required();
  px->add_option("--mod", px_mod, "reduce modulo this value");
  px->callback([&] {
    action = [&] {
      const BigInt x1 = parse_bigint(px_x1);
      if (px_mod.empty()) {
        out << to_decimal(xn(orbit_from_x1(x1, px_eps), px_n)) << "\n";
      } else {
        const BigInt m = parse_bigint(px_mod);
        if (m < 2 || m > pow2(62)) throw UsageError("--mod must be in [2, 2^62]");
        out << xn_mod(mod_u64(x1, m.get_ui()), px_eps, px_n, m.get_ui()) << "\n";
      }
      return kExitOk;
    };
  });

  // bounds
  auto* bounds = app.add_subcommand("bounds", "linear-form bound calculators");
  bounds->require_subcommand(1);
  long bt_k = 4;
  auto* bt = bounds->add_subcommand("tables", "bounds on m1, m2, n2 for a given k");
  bt->add_option("--k", bt_k)->required();
  bt->callback([&] {
    action = [&] {
      const BoundTable t = bound_tables(bt_k);
      out << "m1<" << to_decimal(t.m1_max) << "\nm2<" << to_decimal(t.m2_max) << "\nn2<" << to_decimal(t.n2_max)
          << "\n";
      return kExitOk;
    };
  });
  MatveevInputs mv;
  auto* bm = bounds->add_subcommand("matveev", "Matveev lower bound for log|Lambda|");
  bm->add_option("--t", mv.t)->required();
  bm->add_option("--D", mv.D)->required();
  bm->add_option("--B", mv.B)->required();
  bm->add_option("--A", mv.A)->required()->expected(1, -1);
  bm->callback([&] {
    action = [&] {
      out << std::setprecision(17) << matveev_lower_bound(mv) << "\n";
      return kExitOk;
    };
  });
  LMNInputs lm;
  auto* bl = bounds->add_subcommand("lmn", "Laurent-Mignotte-Nesterenko lower bound for log|Gamma|");
  bl->add_option("--D", lm.D)->required();
  bl->add_option("--logB1", lm.logB1)->required();
  bl->add_option("--logB2", lm.logB2)->required();
  bl->add_option("--bprime", lm.bprime)->required();
  bl->callback([&] {
    action = [&] {
      static const char* names[] = {"log b' + 0.14", "21/D", "1/2"};
      out << std::setprecision(17) << lmn_lower_bound(lm) << "\nbranch=" << names[static_cast<int>(lmn_max_term(lm).branch)]
          << "\n";
      return kExitOk;
    };
  });
  long gl_m = 1;
  double gl_T = 0;
  auto* bg = bounds->add_subcommand("gl", "x < 2^m T (log T)^m");
  bg->add_option("--m", gl_m)->required();
  bg->add_option("--T", gl_T)->required();
  bg->callback([&] {
    action = [&] {
      out << std::setprecision(17) << guzman_luca_bound(gl_m, gl_T) << "\n";
      return kExitOk;
    };
  });

  // reduce
  auto* reduce = app.add_subcommand("reduce", "continued fractions and reduction");
  reduce->require_subcommand(1);
  long r_k = 4, r_m1 = 2, r_q = 200, r_depth = 20, r_ladder = 200;
  int r_eps = -1;
  std::string r_M = "13e27", r_of = "chi", r_x, r_y;
  auto* rdp = reduce->add_subcommand("dp", "Dujella-Petho reduction for one (k, m1, eps)");
  rdp->add_option("--k", r_k)->required();
  rdp->add_option("--m1", r_m1)->required();
  rdp->add_option("--eps", r_eps)->required()->check(CLI::IsMember({-1, 1}));
  rdp->add_option("--q-index", r_q);
  rdp->add_option("--M", r_M);
  rdp->add_option("--ladder", r_ladder);
  rdp->callback([&] {
    action = [&] {
      std::map<Precision, KContext> cache;
      DujellaPethoOptions o;
      o.ladder = r_ladder;
      o.policy.start = cfg.precision;
      const ReductionOutcome res = dujella_petho(dp_instance(r_k, r_m1, r_eps, parse_bigint(r_M), cache), r_q, o);
      if (!res.success) {
        out << "failed: " << res.failure << "\n";
        return kExitFailure;
      }
      out << "w_bound=" << to_decimal(res.w_bound) << " q_index=" << res.q_index << " epsilon=" << res.epsilon.to_string(12)
          << " precision=" << res.precision << "\n";
      return kExitOk;
    };
  });
  for (auto* sc : {reduce->add_subcommand("cf", "certified partial quotients"),
                   reduce->add_subcommand("legendre", "locate x/y among the convergents")}) {
    sc->add_option("--of", r_of, "chi (uses --k), delta (log delta / log 2; --m1 --eps) or tau (--k --m1 --eps)")
        ->check(CLI::IsMember({"chi", "delta", "tau"}));
    sc->add_option("--k", r_k);
    sc->add_option("--m1", r_m1);
    sc->add_option("--eps", r_eps)->check(CLI::IsMember({-1, 1}));
    if (sc->get_name() == "cf") {
      sc->add_option("--depth", r_depth);
      sc->callback([&] {
        action = [&] {
          std::map<Precision, KContext> cache;
          PrecisionPolicy pol;
          pol.start = cfg.precision;
          const CFExpansion cf = cf_expand(target_producer(r_of, r_k, r_m1, r_eps, cache), r_depth, pol);
          out << "[";
          for (std::size_t i = 0; i < cf.quotients.size(); ++i) {
            out << (i ? (i == 1 ? "; " : ", ") : "") << to_decimal(cf.quotients[i]);
          }
          out << "]" << (cf.terminated ? " (terminated)" : "") << "\n";
          return kExitOk;
        };
      });
    } else {
      sc->add_option("--x", r_x)->required();
      sc->add_option("--y", r_y)->required();
      sc->callback([&] {
        action = [&] {
          std::map<Precision, KContext> cache;
          PrecisionPolicy pol;
          pol.start = cfg.precision;
          const auto j = legendre_locate(target_producer(r_of, r_k, r_m1, r_eps, cache), parse_bigint(r_x),
                                         parse_bigint(r_y), pol);
          if (j) out << "convergent index " << *j << "\n";
          else out << "not within 1/(2y^2)\n";
          return kExitOk;
        };
      });
    }
  }

  // sweep
  auto* sweep = app.add_subcommand("sweep", "grid sweeps");
  sweep->require_subcommand(1);
  bool paper_scale = false;
  long s_kmin = 4, s_kmax = 100, s_depth = 150;
  auto* sc = sweep->add_subcommand("chi-quotients", "max partial quotient of chi_k and max chi_k^-1");
  sc->add_option("--k-min", s_kmin);
  sc->add_option("--k-max", s_kmax);
  sc->add_option("--depth", s_depth);
  sc->add_flag("--paper-scale", paper_scale, "k in [4, 500], depth 150");
  sc->callback([&] {
    action = [&] {
      if (paper_scale) {
        s_kmin = 4;
        s_kmax = 500;
        s_depth = 150;
      }
      const SweepReport r = sweep_chi_quotients(s_kmin, s_kmax, s_depth, sweep_options(cfg));
      print_summary(out, r);
      out << "Q=" << to_decimal(r.stat) << "\n";
      bool ok = true;
      if (r.stat2) {
        BigInt ten148;
        mpz_ui_pow_ui(ten148.get_mpz_t(), 10, 148);
        const bool below = *r.stat2 < ten148;  // ceil(x) < N implies x < N
        out << "max ceil(chi_k^-1)=" << to_decimal(*r.stat2) << "\n";
        out << "chi_k^-1 < 10^148 certified: " << (below ? "yes" : "no") << "\n";
        if (s_kmin == 4 && s_kmax == 500) ok = ok && below;
      }
      if (s_kmin == 4 && s_kmax == 500 && s_depth == 150 && r.stat != PaperConstants::Q) {
        out << "MISMATCH: expected Q=" << PaperConstants::Q << "\n";
        ok = false;
      }
      return finish(out, err, cfg, r, ok);
    };
  });

  long d_m1max = 100, d_depth = 299;
  auto* sd = sweep->add_subcommand("delta-quotients", "max partial quotient of log(delta)/log(2)");
  sd->add_option("--m1-max", d_m1max);
  sd->add_option("--depth", d_depth);
  sd->add_flag("--paper-scale", paper_scale, "m1 <= 376, depth 299");
  sd->callback([&] {
    action = [&] {
      if (paper_scale) {
        d_m1max = 376;
        d_depth = 299;
      }
      const SweepReport r = sweep_delta_quotients(d_m1max, d_depth, sweep_options(cfg));
      print_summary(out, r);
      out << "max a_j=" << to_decimal(r.stat) << "\n";
      bool ok = true;
      if (d_m1max == 376 && d_depth == 299 && r.stat != PaperConstants::delta_max) {
        out << "MISMATCH: expected " << PaperConstants::delta_max << "\n";
        ok = false;
      }
      return finish(out, err, cfg, r, ok);
    };
  });

  DpGrid g;
  std::string g_M = "13e27";
  auto* sdp = sweep->add_subcommand("dp", "Dujella-Petho reduction on every (k, m1, eps)");
  sdp->add_option("--k-min", g.k_min);
  sdp->add_option("--k-max", g.k_max);
  sdp->add_option("--m1-min", g.m1_min);
  sdp->add_option("--m1-max", g.m1_max);
  sdp->add_option("--q-index", g.q_index);
  sdp->add_option("--M", g_M);
  sdp->add_option("--ladder", g.ladder);
  sdp->add_flag("--paper-scale", paper_scale, "k in [4, 500], m1 in [2, 221]");
  sdp->callback([&] {
    action = [&] {
      if (paper_scale) {
        g.k_min = 4;
        g.k_max = 500;
        g.m1_min = 2;
        g.m1_max = 221;
        g.q_index = 200;
        g_M = "13e27";
      }
      g.M = parse_bigint(g_M);
      SweepOptions o = sweep_options(cfg);
      const bool paper_grid = g.k_min == 4 && g.k_max == 500 && g.m1_min == 2 && g.m1_max == 221 && g.q_index == 200 &&
                              g.M == paper_scale_M();
      const bool keep_audit = o.audit;
      o.audit = true;  // needed for the discrepancy listing
      SweepReport r = sweep_dp(g, o);
      print_summary(out, r);
      out << "max w_bound=" << to_decimal(r.stat) << "\n";
      bool ok = true;
      if (paper_grid && r.stat != PaperConstants::dp_w_bound) {
        out << "DISCREPANCY: expected max w_bound " << PaperConstants::dp_w_bound << "; cells at the top:\n";
        std::vector<const SweepCell*> top;
        for (const auto& c : r.cells) {
          if (c.ok) top.push_back(&c);
        }
        std::sort(top.begin(), top.end(), [](const SweepCell* a, const SweepCell* b) {
          return std::make_tuple(-a->stat, a->k, a->m1, a->eps) < std::make_tuple(-b->stat, b->k, b->m1, b->eps);
        });
        for (std::size_t i = 0; i < std::min<std::size_t>(top.size(), 20); ++i) {
          out << "  k=" << top[i]->k << " m1=" << top[i]->m1 << " eps=" << top[i]->eps
              << " w_bound=" << to_decimal(top[i]->stat) << " " << top[i]->detail << "\n";
        }
        ok = r.stat >= 1040 && r.stat <= 1060;
      }
      if (!keep_audit) {
        std::vector<SweepCell> failed;
        for (auto& c : r.cells) {
          if (!c.ok) failed.push_back(std::move(c));
        }
        r.cells = std::move(failed);
      }
      return finish(out, err, cfg, r, ok);
    };
  });

  SieveGrid sg;
  std::string sg_index, sg_mod = "1e10";
  auto* sm = sweep->add_subcommand("modsieve", "x_b = F_m^(k) modulo a fixed modulus");
  sm->add_option("--k-min", sg.k_min);
  sm->add_option("--k-max", sg.k_max);
  sm->add_option("--m-max", sg.m_max);
  sm->add_option("--modulus", sg_mod);
  sm->add_option("--index-set", sg_index, "comma separated; default {4, 6, 9, p_3..p_44}");
  sm->add_flag("--paper-scale", paper_scale, "k in [3, 500], m <= 1049");
  sm->callback([&] {
    action = [&] {
      if (paper_scale) {
        sg.k_min = 3;
        sg.k_max = 500;
        sg.m_max = 1049;
      }
      const BigInt mod = parse_bigint(sg_mod);
      if (mod < 2 || mod > pow2(62)) throw UsageError("--modulus must be in [2, 2^62]");
      sg.modulus = mod.get_ui();
      if (!sg_index.empty()) sg.index_set = parse_index_set(sg_index);
      const SieveResult res = mod_sieve(sg, sweep_options(cfg));
      print_summary(out, res.report);
      out << "distinct values=" << res.distinct_values << "\n";
      out << "survivors=" << to_decimal(*res.report.stat2) << "\n";
      for (const auto& s : res.survivors) {
        out << "  y=" << to_decimal(s.y) << " b=" << s.b << " x1=" << to_decimal(s.x1) << " eps=" << s.eps
            << " (F_" << s.m << "^(" << s.k << "))" << (s.exact ? " exact" : " modular only") << "\n";
      }
      return finish(out, err, cfg, res.report, true);
    };
  });

  // search
  auto* search = app.add_subcommand("search", "exhaustive searches");
  search->require_subcommand(1);
  long e_x1 = 20, e_k = 500, e_m = 1049;
  auto* se = search->add_subcommand("enumerate", "x_n = F_m^(k) for small x1");
  se->add_option("--x1-max", e_x1);
  se->add_option("--k-max", e_k);
  se->add_option("--m-max", e_m);
  se->callback([&] {
    action = [&] {
      const auto recs = enumerate_small_x1(e_x1, e_k, e_m, cfg.threads);
      std::map<long, std::set<BigInt>> by_n;
      for (const auto& r : recs) {
        by_n[r.n()].insert(r.value());
        out << "n=" << r.n() << " value=" << to_decimal(r.value()) << " x1=" << to_decimal(r.x1()) << " eps=" << r.epsilon()
            << " k=" << r.k() << " m=" << r.m() << " witnesses=" << r.witnesses() << " " << to_string(r.provenance())
            << "\n";
      }
      for (const auto& [n, vals] : by_n) {
        out << "n=" << n << ": {";
        bool first = true;
        for (const auto& v : vals) {
          out << (first ? "" : ", ") << to_decimal(v);
          first = false;
        }
        out << "}\n";
      }
      return kExitOk;
    };
  });

  // verify
  auto* verify = app.add_subcommand("verify", "exact and certified checks");
  verify->require_subcommand(1);
  long v_kmax = 499, v_amax = 8;
  auto* vf = verify->add_subcommand("families", "families (i) and (ii) in exact arithmetic");
  vf->add_option("--k-max", v_kmax, "largest odd k for family (i)");
  vf->add_option("--a-max", v_amax, "largest a for family (ii)");
  vf->callback([&] {
    action = [&] {
      long count_i = 0, count_ii = 0;
      for (long k = 5; k <= v_kmax; k += 2) {
        verify_family_i(k);
        ++count_i;
      }
      for (long a = 1; a <= v_amax; ++a) {
        const auto [r1, r3] = verify_family_ii(a);
        out << "family-ii a=" << a << ": k=" << r1.k() << " m1=" << r1.m() << " m2=" << r3.m()
            << " x1=" << to_decimal(r1.x1()) << (a <= 2 ? " x3=" + to_decimal(r3.value()) : std::string()) << "\n";
        ++count_ii;
      }
      out << "family-i checks=" << count_i << " family-ii checks=" << count_ii << " all exact\n";
      return kExitOk;
    };
  });
  long vg_x1 = 20, vg_k = 500, vg_m = 1049;
  auto* vg = verify->add_subcommand("gamma", "|Gamma| < 3/alpha^{m-1} on enumerated and family records");
  vg->add_option("--x1-max", vg_x1);
  vg->add_option("--k-max", vg_k);
  vg->add_option("--m-max", vg_m);
  vg->callback([&] {
    action = [&] {
      std::vector<SolutionRecord> recs = enumerate_small_x1(vg_x1, vg_k, vg_m, cfg.threads);
      for (long k = 5; k <= 499; k += 2) {
        const auto [a, b] = verify_family_i(k);
        recs.push_back(a);
        recs.push_back(b);
      }
      for (long a = 1; a <= 8; ++a) {
        const auto [r1, r3] = verify_family_ii(a);
        recs.push_back(r1);
        recs.push_back(r3);
      }
      PrecisionPolicy pol;
      pol.start = cfg.precision;
      long bad = 0;
      for (const auto& r : recs) {
        if (!check_gamma_inequality(r, pol)) {
          ++bad;
          out << "FAILED k=" << r.k() << " n=" << r.n() << " m=" << r.m() << " x1=" << to_decimal(r.x1()) << "\n";
        }
      }
      out << "records=" << recs.size() << " failures=" << bad << "\n";
      return bad == 0 ? kExitOk : kExitFailure;
    };
  });

  std::vector<std::string> args(argv.rbegin(), argv.rend());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }
  if (!action) {
    err << app.help();
    return kExitUsage;
  }
  try {
    return action();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const BracketError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

inline int run_command(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_command(args, out, err);
}

}  // namespace pellfib
