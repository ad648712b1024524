#include "nmach/error.hpp"

namespace nmach {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::InvalidInput: return "InvalidInput";
    case Errc::ParseError: return "ParseError";
    case Errc::NonFiniteEntries: return "NonFiniteEntries";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NoUnitEigenvalue: return "NoUnitEigenvalue";
    case Errc::DegenerateFixedSpace: return "DegenerateFixedSpace";
    case Errc::SingularMatrix: return "SingularMatrix";
    case Errc::NotSymmetric: return "NotSymmetric";
    case Errc::UnknownSymbol: return "UnknownSymbol";
    case Errc::EnumerationCapExceeded: return "EnumerationCapExceeded";
    case Errc::StationaryMismatch: return "StationaryMismatch";
    case Errc::DegenerateParameter: return "DegenerateParameter";
    case Errc::TruncationTooCoarse: return "TruncationTooCoarse";
    case Errc::NegativeEntriesUnsupportedOrder: return "NegativeEntriesUnsupportedOrder";
    case Errc::ZeroEntryWithQuasiOrder: return "ZeroEntryWithQuasiOrder";
    case Errc::NegativeConditional: return "NegativeConditional";
    case Errc::InvalidAlpha: return "InvalidAlpha";
    case Errc::QuasiMachineUnsupported: return "QuasiMachineUnsupported";
    case Errc::UnsupportedProcess: return "UnsupportedProcess";
    case Errc::ZeroBaseline: return "ZeroBaseline";
    case Errc::NotConverged: return "NotConverged";
    case Errc::NonPSD: return "NonPSD";
    case Errc::IsometryViolated: return "IsometryViolated";
    case Errc::SpecMismatch: return "SpecMismatch";
    case Errc::PropertyViolated: return "PropertyViolated";
    case Errc::NegativeRadicand: return "NegativeRadicand";
    case Errc::NoFeasiblePoint: return "NoFeasiblePoint";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

}  // namespace nmach
