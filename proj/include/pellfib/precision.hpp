#pragma once

#include <algorithm>
#include <string>
#include <utility>

#include "pellfib/ball.hpp"
#include "pellfib/errors.hpp"

namespace pellfib {

/// Working-precision ladder: start, start*2, ... up to a hard cap.
struct PrecisionPolicy {
  Precision start = 350;
  Precision cap = 8192;
  /// Recompute certified discrete results at twice the precision and
  /// require agreement before accepting them.
  bool dual_check = true;
};

inline Precision next_precision(Precision p, Precision cap) { return std::min(p * 2, cap); }

/// Runs f(p) for p on the policy ladder until it stops signalling
/// PrecisionEscalation.
template <typename F>
auto escalate(const PrecisionPolicy& policy, F&& f) -> decltype(f(Precision{})) {
  Precision p = std::min(policy.start, policy.cap);
  for (;;) {
    try {
      return f(p);
    } catch (const PrecisionEscalation& e) {
      if (p >= policy.cap) {
        throw PrecisionCapExceeded("precision cap " + std::to_string(policy.cap) +
                                   " bits exhausted: " + e.what());
      }
      p = next_precision(p, policy.cap);
    }
  }
}

/// Like escalate, but a result is accepted only when the evaluation at the
/// next rung of the ladder (when dual_check is on) reproduces it exactly.
/// `f` must return an equality-comparable value. The precision of the
/// accepted (first) evaluation is stored in `accepted` when given.
template <typename F>
auto escalate_certified(const PrecisionPolicy& policy, F&& f, Precision* accepted = nullptr)
    -> decltype(f(Precision{})) {
  Precision p = std::min(policy.start, policy.cap);
  for (;;) {
    try {
      auto first = f(p);
      if (accepted) *accepted = p;
      if (!policy.dual_check) return first;
      const Precision p2 = std::max(next_precision(p, policy.cap), p);
      if (p2 == p) return first;
      auto second = f(p2);
      if (first == second) return first;
      throw PrecisionEscalation("dual-precision results disagree");
    } catch (const PrecisionEscalation& e) {
      if (p >= policy.cap) {
        throw PrecisionCapExceeded("precision cap " + std::to_string(policy.cap) +
                                   " bits exhausted: " + e.what());
      }
      p = next_precision(p, policy.cap);
    }
  }
}

}  // namespace pellfib
