#pragma once

#include <vector>

#include "gridgame/descriptor_system.hpp"
#include "gridgame/integrator.hpp"
#include "gridgame/types.hpp"

namespace gridgame {

struct FilterDesign {
  Mat gain;                       // G, n x outputs
  double gamma = 0.0;             // sweep value that produced the gain (0 = user gain)
  double window = 5.0;            // observation window T, seconds
  int max_iterations = 250;       // relaxation sweep cap
  double residue_threshold = 1e-5;
};

/// Observer pencil check: (E, A + GC) must stay regular and Hurwitz.
/// Throws IrregularPencil / NotHurwitz.
void validate_observer(const DescriptorSystem& sys, const Mat& gain);

/// Doubles gamma from 1 until G = -gamma * C^T passes validate_observer.
/// NotHurwitz when the sweep exhausts its range.
FilterDesign design_observer_gain(const DescriptorSystem& sys, double window,
                                  int max_iterations, double residue_threshold);

/// Residual generator E z' = A z + G (C z - y), r = C z - y, run on sampled
/// measurements (outputs x nodes, grid inferred from the column count).
struct FilterRun {
  Grid grid;
  Mat estimates;  // n x nodes
  Mat residues;   // outputs x nodes
};

FilterRun centralized_filter(const DescriptorSystem& sys, const FilterDesign& design,
                             const Mat& measurements, const Vec& z0, double step);

/// Waveform relaxation of the same filter split along the partition: each
/// subsystem integrates its own block with the coupling input A_C * Z frozen
/// at the previous iterate. deltas[k] records the sup-norm change revealed by
/// the sweep after iterate k+1, so a decoupled system (A_C = 0) reports
/// deltas[0] = 0: its first iterate is already the fixed point.
struct RelaxationRun {
  Grid grid;
  Mat estimates;
  Mat residues;
  std::vector<double> deltas;
  int sweeps = 0;        // integration sweeps performed (max_iterations cap)
  bool converged = false;  // non-convergence is reported, not thrown
};

RelaxationRun relax_distributed(const DescriptorSystem& sys, const BlockSplit& split,
                                const FilterDesign& design, const Mat& measurements,
                                const Vec& z0, double step, double tolerance,
                                const Mat* initial_guess = nullptr);

/// Detection window T/m for a subsystem holding m communication links.
/// ZeroConnections when m < 1.
double detection_time(double window, long long connections);

}  // namespace gridgame
