#pragma once

#include <string>

#include "gridgame/types.hpp"

namespace gridgame {

/// Mixed-strategy solution of the zero-sum matrix game with attacker payoff
/// `values` (attacker maximizes, defender minimizes).
struct Equilibrium {
  Vec attacker;  // row mixture, sums to 1
  Vec defender;  // column mixture
  double value = 0.0;        // attacker expectation at the reported mixtures
  double upper_value = 0.0;  // max_r (P q)_r: attacker best response payoff
  double lower_value = 0.0;  // min_c (p^T P)_c: defender best response payoff
  long long iterations = 0;
  bool converged = false;
  int degenerate_pivots = 0;  // LP only: ties resolved lexicographically
  std::string method;

  /// Duality gap bound: 0 exactly at equilibrium.
  [[nodiscard]] double gap() const { return upper_value - lower_value; }
};

/// Alternating-update fictitious play from uniform initial beliefs, best
/// response ties broken toward the lowest index. Stops when the empirical
/// mixtures' gap falls below `tolerance`; non-convergence inside
/// `max_iterations` is reported via `converged`, not thrown.
Equilibrium fictitious_play(const Mat& payoff, long long max_iterations, double tolerance);

/// Exact minimax via a primal simplex tableau on the positively shifted and
/// scaled matrix; the attacker mixture is read off the dual row. Degenerate
/// ratio ties are fought with lexicographic pivoting and counted. A support
/// least-squares polish pushes the indifference residual toward roundoff.
Equilibrium lp_minimax(const Mat& payoff);

/// Largest violation of the equilibrium support conditions: on-support
/// payoffs must equal the value, off-support must not beat it. Zero-ish at a
/// true equilibrium; used as the certificate for lp_minimax outputs.
double indifference_gap(const Mat& payoff, const Vec& attacker, const Vec& defender,
                        double support_threshold = 1e-8);

}  // namespace gridgame
