#include "gridgame/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "gridgame/errors.hpp"

namespace gridgame {

namespace {

int argmax_lowest(const Vec& v) {
  int best = 0;
  for (int i = 1; i < v.size(); ++i)
    if (v[i] > v[best]) best = i;
  return best;
}

int argmin_lowest(const Vec& v) {
  int best = 0;
  for (int i = 1; i < v.size(); ++i)
    if (v[i] < v[best]) best = i;
  return best;
}

void check_matrix(const Mat& payoff) {
  if (payoff.rows() < 1 || payoff.cols() < 1)
    fail(Errc::InvalidScenario, "empty payoff matrix");
  if (!payoff.allFinite()) fail(Errc::NumericalFailure, "payoff matrix has non-finite entries");
}

/// Simplex tableau for: maximize sum(q) subject to A q <= 1, q >= 0, where
/// every entry of A is strictly positive (the caller shifts and scales).
struct DefenderLp {
  Mat tableau;             // (rows + 1) x (cols + rows + 1)
  std::vector<int> basis;  // basic variable per constraint row
  int rows, cols;
  int pivots = 0, degenerate = 0;

  explicit DefenderLp(const Mat& a)
      : rows(static_cast<int>(a.rows())), cols(static_cast<int>(a.cols())) {
    tableau = Mat::Zero(rows + 1, cols + rows + 1);
    tableau.topLeftCorner(rows, cols) = a;
    tableau.block(0, cols, rows, rows).setIdentity();
    tableau.col(cols + rows).head(rows).setOnes();
    tableau.row(rows).head(cols).setConstant(-1.0);
    basis.resize(rows);
    for (int i = 0; i < rows; ++i) basis[i] = cols + i;
  }

  [[nodiscard]] int rhs() const { return cols + rows; }

  // lexicographic ratio test: min over rhs, ties resolved by comparing the
  // candidate rows (scaled by the pivot entry) column by column, rhs first,
  // then the slack block (spans B^{-1}), then the structural columns
  int leaving_row(int entering) {
    constexpr double kPivotEps = 1e-11;
    std::vector<int> candidates;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < rows; ++i) {
      const double den = tableau(i, entering);
      if (den <= kPivotEps) continue;
      const double ratio = tableau(i, rhs()) / den;
      if (ratio < best - 1e-12 * (1.0 + std::abs(best))) {
        best = ratio;
        candidates.assign(1, i);
      } else if (ratio <= best + 1e-12 * (1.0 + std::abs(best))) {
        candidates.push_back(i);
      }
    }
    if (candidates.empty()) fail(Errc::NumericalFailure, "unbounded game LP");
    if (best <= 1e-12) ++degenerate;
    std::vector<int> order;
    order.push_back(rhs());
    for (int c = cols; c < cols + rows; ++c) order.push_back(c);
    for (int c = 0; c < cols; ++c) order.push_back(c);
    for (int col : order) {
      if (candidates.size() == 1) break;
      double low = std::numeric_limits<double>::infinity();
      for (int i : candidates) low = std::min(low, tableau(i, col) / tableau(i, entering));
      std::vector<int> kept;
      for (int i : candidates)
        if (tableau(i, col) / tableau(i, entering) <= low + 1e-12 * (1.0 + std::abs(low)))
          kept.push_back(i);
      candidates.swap(kept);
    }
    return candidates.front();
  }

  void pivot(int row, int col) {
    tableau.row(row) /= tableau(row, col);
    for (int i = 0; i <= rows; ++i) {
      if (i == row) continue;
      const double factor = tableau(i, col);
      if (factor != 0.0) tableau.row(i) -= factor * tableau.row(row);
    }
    basis[row] = col;
    ++pivots;
  }

  void solve() {
    const long long cap = 20000 + 40LL * (rows + cols);
    while (true) {
      int entering = -1;
      double most_negative = -1e-12;
      for (int c = 0; c < cols + rows; ++c) {
        const double reduced = tableau(rows, c);
        if (reduced < most_negative) {
          most_negative = reduced;
          entering = c;
        }
      }
      if (entering < 0) return;
      pivot(leaving_row(entering), entering);
      if (pivots > cap) fail(Errc::NumericalFailure, "simplex pivot cap exceeded");
    }
  }
};

struct Support {
  std::vector<int> rows, cols;
};

Support support_of(const Vec& p, const Vec& q, double threshold) {
  Support s;
  const double tp = threshold * std::max(1e-300, p.maxCoeff());
  const double tq = threshold * std::max(1e-300, q.maxCoeff());
  for (int i = 0; i < p.size(); ++i)
    if (p[i] > tp) s.rows.push_back(i);
  for (int j = 0; j < q.size(); ++j)
    if (q[j] > tq) s.cols.push_back(j);
  return s;
}

/// Least-squares refinement on the detected supports: solve the indifference
/// equations exactly instead of trusting accumulated pivot arithmetic.
bool polish_on_support(const Mat& payoff, Vec& p, Vec& q, double& value) {
  const Support s = support_of(p, q, 1e-8);
  const auto nr = static_cast<int>(s.rows.size());
  const auto nc = static_cast<int>(s.cols.size());
  if (nr == 0 || nc == 0) return false;

  // defender system: payoff(SA, SD) * q_SD = v on the attacker support
  Mat mq = Mat::Zero(nr + 1, nc + 1);
  Vec bq = Vec::Zero(nr + 1);
  for (int r = 0; r < nr; ++r) {
    for (int c = 0; c < nc; ++c) mq(r, c) = payoff(s.rows[r], s.cols[c]);
    mq(r, nc) = -1.0;
  }
  mq.row(nr).head(nc).setOnes();
  bq[nr] = 1.0;
  const Vec xq = mq.colPivHouseholderQr().solve(bq);

  Mat mp = Mat::Zero(nc + 1, nr + 1);
  Vec bp = Vec::Zero(nc + 1);
  for (int c = 0; c < nc; ++c) {
    for (int r = 0; r < nr; ++r) mp(c, r) = payoff(s.rows[r], s.cols[c]);
    mp(c, nr) = -1.0;
  }
  mp.row(nc).head(nr).setOnes();
  bp[nc] = 1.0;
  const Vec xp = mp.colPivHouseholderQr().solve(bp);

  Vec p_new = Vec::Zero(p.size());
  Vec q_new = Vec::Zero(q.size());
  for (int r = 0; r < nr; ++r) p_new[s.rows[r]] = xp[r];
  for (int c = 0; c < nc; ++c) q_new[s.cols[c]] = xq[c];
  if (p_new.minCoeff() < -1e-10 || q_new.minCoeff() < -1e-10) return false;
  p_new = p_new.cwiseMax(0.0);
  q_new = q_new.cwiseMax(0.0);
  const double ps = p_new.sum(), qs = q_new.sum();
  if (ps <= 0.0 || qs <= 0.0) return false;
  p_new /= ps;
  q_new /= qs;

  const double scale = std::max(1.0, payoff.cwiseAbs().maxCoeff());
  const double v_new = p_new.dot(payoff * q_new);
  if (indifference_gap(payoff, p_new, q_new) > 1e-9 * scale) return false;
  p = p_new;
  q = q_new;
  value = v_new;
  return true;
}

}  // namespace

Equilibrium fictitious_play(const Mat& payoff, long long max_iterations, double tolerance) {
  check_matrix(payoff);
  if (max_iterations < 1) fail(Errc::InvalidScenario, "need at least one iteration");
  const auto rows = static_cast<int>(payoff.rows());
  const auto cols = static_cast<int>(payoff.cols());

  Vec counts_a = Vec::Constant(rows, 1.0 / rows);  // uniform prior of weight one
  Vec counts_d = Vec::Constant(cols, 1.0 / cols);
  double weight_a = 1.0, weight_d = 1.0;
  Vec y = payoff * counts_d;              // attacker payoff against defender belief
  Vec z = payoff.transpose() * counts_a;  // defender exposure against attacker belief

  Equilibrium eq;
  eq.method = "fictitious-play";
  for (long long t = 1; t <= max_iterations; ++t) {
    const int i = argmax_lowest(y);
    counts_a[i] += 1.0;
    weight_a += 1.0;
    z += payoff.row(i).transpose();
    const int j = argmin_lowest(z);
    counts_d[j] += 1.0;
    weight_d += 1.0;
    y += payoff.col(j);
    eq.upper_value = y.maxCoeff() / weight_d;
    eq.lower_value = z.minCoeff() / weight_a;
    eq.iterations = t;
    if (eq.gap() < tolerance) {
      eq.converged = true;
      break;
    }
  }
  eq.attacker = counts_a / weight_a;
  eq.defender = counts_d / weight_d;
  eq.value = counts_a.dot(y) / (weight_a * weight_d);
  return eq;
}

Equilibrium lp_minimax(const Mat& payoff) {
  check_matrix(payoff);
  const auto rows = static_cast<int>(payoff.rows());
  const auto cols = static_cast<int>(payoff.cols());

  // make every entry >= 1 (value strictly positive), then scale to O(1)
  const double shift = 1.0 - payoff.minCoeff();
  const double scale = (payoff.array() + shift).maxCoeff();
  const Mat a = (payoff.array() + shift) / scale;

  DefenderLp lp(a);
  lp.solve();

  const double objective = lp.tableau(rows, lp.rhs());
  if (!(objective > 0.0)) fail(Errc::NumericalFailure, "degenerate simplex objective");

  Vec q_raw = Vec::Zero(cols);
  for (int i = 0; i < rows; ++i)
    if (lp.basis[i] < cols) q_raw[lp.basis[i]] = std::max(0.0, lp.tableau(i, lp.rhs()));
  Vec y_dual = Vec::Zero(rows);
  for (int i = 0; i < rows; ++i) y_dual[i] = std::max(0.0, lp.tableau(rows, cols + i));

  Equilibrium eq;
  eq.method = "lp-minimax";
  eq.iterations = lp.pivots;
  eq.degenerate_pivots = lp.degenerate;
  eq.converged = true;
  const double qs = q_raw.sum(), ys = y_dual.sum();
  if (qs <= 0.0 || ys <= 0.0) fail(Errc::NumericalFailure, "simplex returned an empty mixture");
  eq.defender = q_raw / qs;
  eq.attacker = y_dual / ys;
  eq.value = eq.attacker.dot(payoff * eq.defender);

  polish_on_support(payoff, eq.attacker, eq.defender, eq.value);

  eq.upper_value = (payoff * eq.defender).maxCoeff();
  eq.lower_value = (payoff.transpose() * eq.attacker).minCoeff();
  return eq;
}

double indifference_gap(const Mat& payoff, const Vec& attacker, const Vec& defender,
                        double support_threshold) {
  if (attacker.size() != payoff.rows() || defender.size() != payoff.cols())
    fail(Errc::InvalidScenario, "mixture sizes do not match the payoff matrix");
  const double value = attacker.dot(payoff * defender);
  const Vec row_payoff = payoff * defender;
  const Vec col_payoff = payoff.transpose() * attacker;
  const Support s = support_of(attacker, defender, support_threshold);

  double gap = 0.0;
  std::vector<bool> on_row(attacker.size(), false), on_col(defender.size(), false);
  for (int i : s.rows) on_row[i] = true;
  for (int j : s.cols) on_col[j] = true;
  for (int i = 0; i < attacker.size(); ++i) {
    if (on_row[i])
      gap = std::max(gap, std::abs(row_payoff[i] - value));
    else
      gap = std::max(gap, row_payoff[i] - value);  // must not beat the value
  }
  for (int j = 0; j < defender.size(); ++j) {
    if (on_col[j])
      gap = std::max(gap, std::abs(col_payoff[j] - value));
    else
      gap = std::max(gap, value - col_payoff[j]);
  }
  return gap;
}

}  // namespace gridgame
