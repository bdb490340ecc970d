#include "gridgame/errors.hpp"

namespace gridgame {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidScenario: return "InvalidScenario";
    case Errc::ZeroPressureDrop: return "ZeroPressureDrop";
    case Errc::CompressorSingular: return "CompressorSingular";
    case Errc::IrregularPencil: return "IrregularPencil";
    case Errc::UnstableSystem: return "UnstableSystem";
    case Errc::PartitionMismatch: return "PartitionMismatch";
    case Errc::SingularStepMatrix: return "SingularStepMatrix";
    case Errc::HorizonNonpositive: return "HorizonNonpositive";
    case Errc::PoleEvaluation: return "PoleEvaluation";
    case Errc::WindowExceedsHorizon: return "WindowExceedsHorizon";
    case Errc::NotHurwitz: return "NotHurwitz";
    case Errc::MeasurementGridMismatch: return "MeasurementGridMismatch";
    case Errc::ZeroConnections: return "ZeroConnections";
    case Errc::KExceedsPool: return "KExceedsPool";
    case Errc::InfeasibleBudget: return "InfeasibleBudget";
    case Errc::NoEqualAllocation: return "NoEqualAllocation";
    case Errc::CapExceeded: return "CapExceeded";
    case Errc::NumericalFailure: return "NumericalFailure";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

void fail(Errc code, const std::string& message) {
  throw Error(code, std::string(errc_name(code)) + ": " + message);
}

}  // namespace gridgame
