#pragma once

#include <stdexcept>
#include <string>

namespace gridgame {

/// Failure categories surfaced by the library. The CLI maps these onto exit codes.
enum class Errc {
  InvalidScenario,          // bad field values, dangling references, malformed JSON
  ZeroPressureDrop,         // equal operating heads, flow gradient undefined
  CompressorSingular,       // k2 - k1 * r^alpha vanishes at the operating point
  IrregularPencil,          // det(sE - A) identically zero
  UnstableSystem,           // finite pencil eigenvalue with Re >= -1e-9
  PartitionMismatch,        // subsystem blocks don't cover the states exactly once
  SingularStepMatrix,       // E/h - A/2 not invertible at the chosen step
  HorizonNonpositive,
  PoleEvaluation,           // transfer probed at (or too near) a pencil eigenvalue
  WindowExceedsHorizon,
  NotHurwitz,               // observer pencil has a finite eigenvalue with Re >= 0
  MeasurementGridMismatch,  // sample matrix shape disagrees with grid/output count
  ZeroConnections,          // detection window requested for m = 0 allocated links
  KExceedsPool,
  InfeasibleBudget,         // N*g > budget, no allocation exists
  NoEqualAllocation,        // balanced allocation absent from the defender's list
  CapExceeded,              // enumeration would exceed the configured cap
  NumericalFailure,
  Io,
};

[[nodiscard]] const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  [[nodiscard]] Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Throws Error with the message prefixed by the code name.
[[noreturn]] void fail(Errc code, const std::string& message);

}  // namespace gridgame
