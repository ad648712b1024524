#pragma once

#include <stdexcept>
#include <string>

namespace nmach {

enum class Errc {
  InvalidInput,
  ParseError,
  NonFiniteEntries,
  DimensionMismatch,
  NoUnitEigenvalue,
  DegenerateFixedSpace,
  SingularMatrix,
  NotSymmetric,
  UnknownSymbol,
  EnumerationCapExceeded,
  StationaryMismatch,
  DegenerateParameter,
  TruncationTooCoarse,
  NegativeEntriesUnsupportedOrder,
  ZeroEntryWithQuasiOrder,
  NegativeConditional,
  InvalidAlpha,
  QuasiMachineUnsupported,
  UnsupportedProcess,
  ZeroBaseline,
  NotConverged,
  NonPSD,
  IsometryViolated,
  SpecMismatch,
  PropertyViolated,
  NegativeRadicand,
  NoFeasiblePoint,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace nmach
