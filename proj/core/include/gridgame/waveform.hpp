#pragma once

#include <limits>
#include <string>

namespace gridgame {

enum class WaveformKind { Step, Pulse, Sine };

/// Scalar attack signal v(t). Sampling exactly at a jump instant returns the
/// midpoint value (v0/2): the trapezoidal rule integrates the piecewise-linear
/// interpolant of the samples, and the midpoint convention keeps its second
/// order accuracy across the discontinuity. A jump at t = 0 has no preceding
/// cell to cancel against, so there the full post-jump value is returned.
struct Waveform {
  WaveformKind kind = WaveformKind::Step;
  double magnitude = 1.0;
  double start = 0.0;
  double stop = std::numeric_limits<double>::infinity();  // pulse turn-off
  double frequency_hz = 1.0;                              // sine only

  [[nodiscard]] double operator()(double t) const;

  /// Same shape with the onset moved to t = 0 (pulse keeps its duration).
  [[nodiscard]] Waveform restarted_at_zero() const;
};

[[nodiscard]] const char* waveform_kind_name(WaveformKind kind) noexcept;
[[nodiscard]] WaveformKind waveform_kind_from_name(const std::string& name);

}  // namespace gridgame
