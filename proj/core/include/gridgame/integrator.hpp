#pragma once

#include <Eigen/LU>

#include "gridgame/types.hpp"

namespace gridgame {

/// Uniform time grid over [0, steps * step].
struct Grid {
  double step = 0.0;
  int steps = 0;

  [[nodiscard]] int nodes() const { return steps + 1; }
  [[nodiscard]] double time(int k) const { return step * k; }
  [[nodiscard]] double horizon() const { return step * steps; }
};

/// Smallest grid of the given step covering [0, horizon].
/// HorizonNonpositive unless horizon > 0 and step > 0.
Grid make_grid(double horizon, double step);

/// Implicit trapezoidal stepping of E x' = A x + u(t) at a fixed step:
///   (E/h - A/2) x_{k+1} = (E/h + A/2) x_k + (u_k + u_{k+1}) / 2.
/// The system is LTI and the step fixed, so the left-hand matrix is factored
/// once. SingularStepMatrix when that factorization is unusable.
class TrapezoidalLti {
 public:
  TrapezoidalLti(const Mat& e, const Mat& a, double step);

  /// Integrates with per-node input samples (n x nodes); returns n x nodes.
  [[nodiscard]] Mat run(const Vec& x0, const Mat& input) const;

  /// Input-free variant.
  [[nodiscard]] Mat run_free(const Vec& x0, int steps) const;

  [[nodiscard]] double step() const { return step_; }
  [[nodiscard]] int dimension() const { return static_cast<int>(plus_.rows()); }

 private:
  Eigen::PartialPivLU<Mat> minus_lu_;  // E/h - A/2
  Mat plus_;                           // E/h + A/2
  double step_ = 0.0;
};

}  // namespace gridgame
