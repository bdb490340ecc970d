#pragma once

#include "gridgame/infrastructure.hpp"

namespace gridgame {

/// Flow exponent of the water pipe law Q = sgn * C * |dh|^(1/1.85).
inline constexpr double kWaterExponent = 1.85;

/// First-order coefficients of a branch flow Q(h_from, h_to) around the
/// operating heads, flow measured positive from -> to.
struct FlowGradient {
  double d_from = 0.0;  // dQ/dh_from
  double d_to = 0.0;    // dQ/dh_to
};

/// Gas: Q = sgn(hf - ht) * C * sqrt(|hf^2 - ht^2|)
/// Water: Q = sgn(hf - ht) * C * |hf - ht|^(1/1.85)
/// Equal heads leave the direction (and the derivative) undefined:
/// ZeroPressureDrop.
FlowGradient pipe_gradient(FluidKind kind, double constant, double h_from, double h_to);

/// Compressor: Q = sgn(hf - ht) * P / (k2 - k1 * r^alpha), r = h_max / h_min.
/// ZeroPressureDrop on equal heads, CompressorSingular when the denominator
/// vanishes at the operating ratio.
FlowGradient compressor_gradient(double power, double k1, double k2, double alpha,
                                 double h_from, double h_to);

}  // namespace gridgame
