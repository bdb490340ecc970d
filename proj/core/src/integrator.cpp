#include "gridgame/integrator.hpp"

#include <cmath>
#include <string>

#include "gridgame/errors.hpp"

namespace gridgame {

Grid make_grid(double horizon, double step) {
  if (!(horizon > 0.0)) fail(Errc::HorizonNonpositive, "horizon " + std::to_string(horizon));
  if (!(step > 0.0)) fail(Errc::HorizonNonpositive, "step " + std::to_string(step));
  // cover the horizon; the 1e-9 slack keeps horizon = k*step from gaining a node
  const auto steps = static_cast<int>(std::ceil(horizon / step - 1e-9));
  return Grid{step, steps < 1 ? 1 : steps};
}

TrapezoidalLti::TrapezoidalLti(const Mat& e, const Mat& a, double step) : step_(step) {
  if (!(step > 0.0)) fail(Errc::HorizonNonpositive, "step " + std::to_string(step));
  const Mat minus = e / step - 0.5 * a;
  minus_lu_.compute(minus);
  if (minus_lu_.rcond() < 1e-14)
    fail(Errc::SingularStepMatrix,
         "E/h - A/2 is numerically singular at step " + std::to_string(step));
  plus_ = e / step + 0.5 * a;
}

Mat TrapezoidalLti::run(const Vec& x0, const Mat& input) const {
  const int n = dimension();
  if (x0.size() != n || input.rows() != n || input.cols() < 1)
    fail(Errc::MeasurementGridMismatch, "input samples do not match the system dimension");
  const auto nodes = static_cast<int>(input.cols());
  Mat x(n, nodes);
  x.col(0) = x0;
  for (int k = 0; k + 1 < nodes; ++k)
    x.col(k + 1) = minus_lu_.solve(plus_ * x.col(k) + 0.5 * (input.col(k) + input.col(k + 1)));
  return x;
}

Mat TrapezoidalLti::run_free(const Vec& x0, int steps) const {
  const int n = dimension();
  if (x0.size() != n || steps < 1)
    fail(Errc::MeasurementGridMismatch, "bad initial state or step count");
  Mat x(n, steps + 1);
  x.col(0) = x0;
  for (int k = 0; k < steps; ++k) x.col(k + 1) = minus_lu_.solve(plus_ * x.col(k));
  return x;
}

}  // namespace gridgame
