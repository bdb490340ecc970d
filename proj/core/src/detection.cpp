#include "gridgame/detection.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "gridgame/errors.hpp"

namespace gridgame {

namespace {

void check_measurements(const DescriptorSystem& sys, const Mat& measurements) {
  if (measurements.rows() != sys.outputs())
    fail(Errc::MeasurementGridMismatch,
         "expected " + std::to_string(sys.outputs()) + " measurement rows, got " +
             std::to_string(measurements.rows()));
  if (measurements.cols() < 2)
    fail(Errc::MeasurementGridMismatch, "need at least two sample columns");
}

void check_gain_shape(const DescriptorSystem& sys, const Mat& gain) {
  if (gain.rows() != sys.n() || gain.cols() != sys.outputs())
    fail(Errc::MeasurementGridMismatch,
         "observer gain must be states x outputs (" + std::to_string(sys.n()) + " x " +
             std::to_string(sys.outputs()) + ")");
}

}  // namespace

void validate_observer(const DescriptorSystem& sys, const Mat& gain) {
  check_gain_shape(sys, gain);
  const Mat closed = sys.a + gain * sys.c;
  if (!pencil_regular(sys.e, closed))
    fail(Errc::IrregularPencil, "observer pencil det(sE - (A + GC)) vanishes everywhere");
  for (const auto& ev : finite_pencil_eigenvalues(sys.e, closed)) {
    if (ev.real() >= -1e-9)
      fail(Errc::NotHurwitz, "observer eigenvalue with real part " + std::to_string(ev.real()));
  }
}

FilterDesign design_observer_gain(const DescriptorSystem& sys, double window,
                                  int max_iterations, double residue_threshold) {
  if (!(window > 0.0)) fail(Errc::HorizonNonpositive, "observation window must be positive");
  if (max_iterations < 1) fail(Errc::InvalidScenario, "relaxation needs at least one sweep");
  if (!(residue_threshold > 0.0)) fail(Errc::InvalidScenario, "residue threshold must be positive");

  FilterDesign design;
  design.window = window;
  design.max_iterations = max_iterations;
  design.residue_threshold = residue_threshold;
  for (double gamma = 1.0; gamma <= 1048576.0; gamma *= 2.0) {
    const Mat gain = -gamma * sys.c.transpose();
    try {
      validate_observer(sys, gain);
    } catch (const Error&) {
      continue;
    }
    design.gain = gain;
    design.gamma = gamma;
    return design;
  }
  fail(Errc::NotHurwitz, "output-injection sweep found no stabilizing gain");
}

FilterRun centralized_filter(const DescriptorSystem& sys, const FilterDesign& design,
                             const Mat& measurements, const Vec& z0, double step) {
  check_measurements(sys, measurements);
  check_gain_shape(sys, design.gain);
  if (z0.size() != sys.n())
    fail(Errc::MeasurementGridMismatch, "initial estimate size mismatch");

  FilterRun run;
  run.grid = Grid{step, static_cast<int>(measurements.cols()) - 1};
  if (!(step > 0.0)) fail(Errc::HorizonNonpositive, "step must be positive");

  const Mat closed = sys.a + design.gain * sys.c;
  const Mat input = -design.gain * measurements;
  const TrapezoidalLti stepper(sys.e, closed, step);
  run.estimates = stepper.run(z0, input);
  run.residues = sys.c * run.estimates - measurements;
  return run;
}

RelaxationRun relax_distributed(const DescriptorSystem& sys, const BlockSplit& split,
                                const FilterDesign& design, const Mat& measurements,
                                const Vec& z0, double step, double tolerance,
                                const Mat* initial_guess) {
  check_measurements(sys, measurements);
  check_gain_shape(sys, design.gain);
  if (z0.size() != sys.n())
    fail(Errc::MeasurementGridMismatch, "initial estimate size mismatch");
  if (!(step > 0.0)) fail(Errc::HorizonNonpositive, "step must be positive");

  const int nodes = static_cast<int>(measurements.cols());
  const int blocks = sys.subsystem_count();

  // the gain may only route a subsystem's own measurements into its block,
  // otherwise the relaxation would need information it never receives
  std::vector<std::vector<int>> block_outputs(blocks);
  for (int r = 0; r < sys.outputs(); ++r)
    block_outputs[sys.states[sys.measured[r]].subsystem].push_back(r);
  for (int b = 0; b < blocks; ++b) {
    for (int i : sys.subsystems[b]) {
      for (int r = 0; r < sys.outputs(); ++r) {
        if (sys.states[sys.measured[r]].subsystem != b && design.gain(i, r) != 0.0)
          fail(Errc::PartitionMismatch,
               "observer gain routes output " + std::to_string(r) + " across subsystem " +
                   std::to_string(b));
      }
    }
  }

  struct LocalFilter {
    std::vector<int> states;
    TrapezoidalLti stepper;
    Mat measured_input;  // -G_i * y_i, constant across sweeps
    Vec z0;
  };
  std::vector<LocalFilter> locals;
  locals.reserve(blocks);
  for (int b = 0; b < blocks; ++b) {
    const auto& idx = sys.subsystems[b];
    const auto& outs = block_outputs[b];
    const Mat e_loc = sys.e(idx, idx);
    const Mat gain_loc = design.gain(idx, outs);
    const Mat c_loc = sys.c(outs, idx);
    const Mat closed_loc = split.a_decoupled(idx, idx) + gain_loc * c_loc;
    locals.push_back({idx, TrapezoidalLti(e_loc, closed_loc, step),
                      -gain_loc * measurements(outs, Eigen::all), Vec(z0(idx))});
  }

  RelaxationRun run;
  run.grid = Grid{step, nodes - 1};
  Mat z = initial_guess ? *initial_guess : Mat::Zero(sys.n(), nodes);
  if (z.rows() != sys.n() || z.cols() != nodes)
    fail(Errc::MeasurementGridMismatch, "initial guess shape mismatch");

  bool have_iterate = false;
  for (int sweep = 1; sweep <= design.max_iterations; ++sweep) {
    const Mat coupling = split.a_coupling * z;
    Mat z_new(sys.n(), nodes);
    for (const auto& local : locals)
      z_new(local.states, Eigen::all) =
          local.stepper.run(local.z0, coupling(local.states, Eigen::all) + local.measured_input);
    run.sweeps = sweep;
    if (have_iterate) {
      const double delta = (z_new - z).cwiseAbs().maxCoeff();
      run.deltas.push_back(delta);
      z = z_new;
      if (delta < tolerance) {
        run.converged = true;
        break;
      }
    } else {
      z = z_new;
      have_iterate = true;
    }
  }

  run.estimates = z;
  run.residues = sys.c * z - measurements;
  return run;
}

double detection_time(double window, long long connections) {
  if (!(window > 0.0)) fail(Errc::HorizonNonpositive, "observation window must be positive");
  if (connections < 1)
    fail(Errc::ZeroConnections, "subsystem holds no communication links");
  return window / static_cast<double>(connections);
}

}  // namespace gridgame
