#include "oracles.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace gridgame::testing {

Mat matrix_exponential(const Mat& m) { return m.exp(); }

Mat zoh_trajectory(const Mat& e, const Mat& a, const Vec& b,
                   const std::vector<double>& cell_values, double step, int steps) {
  const auto n = static_cast<int>(e.rows());
  const Mat m = e.partialPivLu().solve(a);
  const Vec c = e.partialPivLu().solve(b);

  // augmented exponential: exp([[M, c], [0, 0]] h) = [[Phi, Gamma], [0, 1]]
  Mat aug = Mat::Zero(n + 1, n + 1);
  aug.topLeftCorner(n, n) = m * step;
  aug.topRightCorner(n, 1) = c * step;
  const Mat aug_exp = matrix_exponential(aug);
  const Mat phi = aug_exp.topLeftCorner(n, n);
  const Vec gamma = aug_exp.topRightCorner(n, 1);

  Mat out = Mat::Zero(n, steps + 1);
  for (int k = 0; k < steps; ++k)
    out.col(k + 1) = phi * out.col(k) + gamma * cell_values[static_cast<size_t>(k)];
  return out;
}

Mat foh_trajectory(const Mat& e, const Mat& a, const Vec& b,
                   const std::vector<double>& node_values, double step, int steps) {
  const auto n = static_cast<int>(e.rows());
  const Mat m = e.partialPivLu().solve(a);
  const Vec c = e.partialPivLu().solve(b);

  // augmented exponential over [x; v; v']: exp([[M, c, 0], [0, 0, 1], [0, 0, 0]] h)
  // yields Phi plus the hold and ramp input maps in the top block row
  Mat aug = Mat::Zero(n + 2, n + 2);
  aug.topLeftCorner(n, n) = m * step;
  aug.block(0, n, n, 1) = c * step;
  aug(n, n + 1) = step;
  const Mat aug_exp = matrix_exponential(aug);
  const Mat phi = aug_exp.topLeftCorner(n, n);
  const Vec gamma_hold = aug_exp.block(0, n, n, 1);
  const Vec gamma_ramp = aug_exp.block(0, n + 1, n, 1);

  Mat out = Mat::Zero(n, steps + 1);
  for (int k = 0; k < steps; ++k) {
    const double v0 = node_values[static_cast<size_t>(k)];
    const double v1 = node_values[static_cast<size_t>(k) + 1];
    out.col(k + 1) = phi * out.col(k) + gamma_hold * v0 + gamma_ramp * ((v1 - v0) / step);
  }
  return out;
}

RandomSystem random_stable_system(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> real_part(-2.2, -0.3);
  std::uniform_real_distribution<double> imag_part(0.4, 2.5);
  std::uniform_real_distribution<double> diag(0.5, 2.0);
  std::uniform_real_distribution<double> scale(0.8, 1.25);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  Mat lambda = Mat::Zero(n, n);
  int filled = 0;
  while (filled < n) {
    if (n - filled >= 2 && unit(rng) < 0.6) {
      const double sigma = real_part(rng);
      const double omega = imag_part(rng);
      lambda(filled, filled) = sigma;
      lambda(filled, filled + 1) = omega;
      lambda(filled + 1, filled) = -omega;
      lambda(filled + 1, filled + 1) = sigma;
      filled += 2;
    } else {
      lambda(filled, filled) = real_part(rng);
      filled += 1;
    }
  }

  Mat gaussian(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) gaussian(r, c) = gauss(rng);
  const Mat q = Eigen::HouseholderQR<Mat>(gaussian).householderQ();
  Vec stretch(n);
  for (int i = 0; i < n; ++i) stretch[i] = scale(rng);
  const Mat v = q * stretch.asDiagonal();

  RandomSystem sys;
  sys.e = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) sys.e(i, i) = diag(rng);
  sys.a = sys.e * v * lambda * v.partialPivLu().solve(Mat::Identity(n, n));
  return sys;
}

Mat random_payoff(std::mt19937_64& rng, int rows, int cols, int style) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> small(0, 5);
  Mat out(rows, cols);
  if (style == 1) {
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) out(r, c) = small(rng);
  } else if (style == 2) {
    Vec u(rows), w(cols);
    for (int r = 0; r < rows; ++r) u[r] = unit(rng);
    for (int c = 0; c < cols; ++c) w[c] = unit(rng);
    out = u * w.transpose();
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) out(r, c) += 0.05 * unit(rng);
  } else {
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) out(r, c) = unit(rng);
  }
  return out;
}

namespace {

void combinations(int n, int k, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> pick(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) pick[static_cast<size_t>(i)] = i;
  while (true) {
    visit(pick);
    int i = k - 1;
    while (i >= 0 && pick[static_cast<size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++pick[static_cast<size_t>(i)];
    for (int j = i + 1; j < k; ++j) pick[static_cast<size_t>(j)] = pick[static_cast<size_t>(j - 1)] + 1;
  }
}

/// Solves the square-support indifference equations and validates the
/// candidate as a full-matrix saddle point.
bool try_support(const Mat& payoff, const std::vector<int>& srows, const std::vector<int>& scols,
                 double& value) {
  const auto k = static_cast<int>(srows.size());

  // defender mixture: rows of the submatrix all earn v; weights sum to 1
  Mat mq = Mat::Zero(k + 1, k + 1);
  Vec bq = Vec::Zero(k + 1);
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c) mq(r, c) = payoff(srows[static_cast<size_t>(r)], scols[static_cast<size_t>(c)]);
    mq(r, k) = -1.0;
  }
  mq.row(k).head(k).setOnes();
  bq[k] = 1.0;
  const Eigen::ColPivHouseholderQR<Mat> qrq(mq);
  if (qrq.rank() < k + 1) return false;
  const Vec xq = qrq.solve(bq);

  Mat mp = Mat::Zero(k + 1, k + 1);
  Vec bp = Vec::Zero(k + 1);
  for (int c = 0; c < k; ++c) {
    for (int r = 0; r < k; ++r) mp(c, r) = payoff(srows[static_cast<size_t>(r)], scols[static_cast<size_t>(c)]);
    mp(c, k) = -1.0;
  }
  mp.row(k).head(k).setOnes();
  bp[k] = 1.0;
  const Eigen::ColPivHouseholderQR<Mat> qrp(mp);
  if (qrp.rank() < k + 1) return false;
  const Vec xp = qrp.solve(bp);

  constexpr double kSlack = 1e-9;
  for (int i = 0; i < k; ++i)
    if (xp[i] < -kSlack || xq[i] < -kSlack) return false;
  const double v = xq[k];
  if (std::abs(xp[k] - v) > 1e-7 * (1.0 + std::abs(v))) return false;

  Vec p = Vec::Zero(payoff.rows());
  Vec q = Vec::Zero(payoff.cols());
  for (int i = 0; i < k; ++i) {
    p[srows[static_cast<size_t>(i)]] = std::max(0.0, xp[i]);
    q[scols[static_cast<size_t>(i)]] = std::max(0.0, xq[i]);
  }
  p /= p.sum();
  q /= q.sum();

  const double tol = 1e-8 * (1.0 + payoff.cwiseAbs().maxCoeff());
  if ((payoff * q).maxCoeff() > v + tol) return false;
  if ((payoff.transpose() * p).minCoeff() < v - tol) return false;
  value = v;
  return true;
}

}  // namespace

double enumerated_game_value(const Mat& payoff) {
  const auto rows = static_cast<int>(payoff.rows());
  const auto cols = static_cast<int>(payoff.cols());
  for (int k = 1; k <= std::min(rows, cols); ++k) {
    double value = 0.0;
    bool found = false;
    combinations(rows, k, [&](const std::vector<int>& srows) {
      if (found) return;
      combinations(cols, k, [&](const std::vector<int>& scols) {
        if (found) return;
        if (try_support(payoff, srows, scols, value)) found = true;
      });
    });
    if (found) return value;
  }
  throw std::runtime_error("support enumeration found no equilibrium");
}

long long pascal_binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::vector<std::vector<long long>> table(static_cast<size_t>(n) + 1);
  for (int r = 0; r <= n; ++r) {
    table[static_cast<size_t>(r)].assign(static_cast<size_t>(r) + 1, 1);
    for (int c = 1; c < r; ++c)
      table[static_cast<size_t>(r)][static_cast<size_t>(c)] =
          table[static_cast<size_t>(r - 1)][static_cast<size_t>(c - 1)] +
          table[static_cast<size_t>(r - 1)][static_cast<size_t>(c)];
  }
  return table[static_cast<size_t>(n)][static_cast<size_t>(k)];
}

std::optional<Errc> error_code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& err) {
    return err.code();
  }
  return std::nullopt;
}

}  // namespace gridgame::testing
