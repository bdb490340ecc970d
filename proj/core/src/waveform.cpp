#include "gridgame/waveform.hpp"

#include <cmath>

#include "gridgame/errors.hpp"

namespace gridgame {

namespace {

// grid times are k*h with h >= 1e-5 in practice, so 1e-9 separates
// "lands on the jump node" from "one step away" with room to spare
constexpr double kJumpTol = 1e-9;

enum class Edge { Before, At, After };

Edge classify(double t, double edge) {
  if (t < edge - kJumpTol) return Edge::Before;
  if (t > edge + kJumpTol) return Edge::After;
  return Edge::At;
}

}  // namespace

double Waveform::operator()(double t) const {
  switch (kind) {
    case WaveformKind::Step: {
      switch (classify(t, start)) {
        case Edge::Before: return 0.0;
        case Edge::At: return start <= kJumpTol ? magnitude : 0.5 * magnitude;
        case Edge::After: return magnitude;
      }
      return 0.0;
    }
    case WaveformKind::Pulse: {
      if (classify(t, start) == Edge::Before) return 0.0;
      if (classify(t, start) == Edge::At)
        return start <= kJumpTol ? magnitude : 0.5 * magnitude;
      switch (classify(t, stop)) {
        case Edge::Before: return magnitude;
        case Edge::At: return 0.5 * magnitude;
        case Edge::After: return 0.0;
      }
      return 0.0;
    }
    case WaveformKind::Sine: {
      if (t <= start + kJumpTol) return 0.0;
      return magnitude * std::sin(2.0 * M_PI * frequency_hz * (t - start));
    }
  }
  return 0.0;
}

Waveform Waveform::restarted_at_zero() const {
  Waveform shifted = *this;
  shifted.start = 0.0;
  if (kind == WaveformKind::Pulse && std::isfinite(stop)) shifted.stop = stop - start;
  return shifted;
}

const char* waveform_kind_name(WaveformKind kind) noexcept {
  switch (kind) {
    case WaveformKind::Step: return "step";
    case WaveformKind::Pulse: return "pulse";
    case WaveformKind::Sine: return "sine";
  }
  return "step";
}

WaveformKind waveform_kind_from_name(const std::string& name) {
  if (name == "step") return WaveformKind::Step;
  if (name == "pulse") return WaveformKind::Pulse;
  if (name == "sine") return WaveformKind::Sine;
  fail(Errc::InvalidScenario, "unknown waveform kind '" + name + "'");
}

}  // namespace gridgame
