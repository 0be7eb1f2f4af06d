#pragma once

#include <stdexcept>
#include <string>

namespace cra {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidParams : Error { using Error::Error; };
struct OutOfBand : Error { using Error::Error; };
struct PoleAtBareAtom : Error { using Error::Error; };
struct EmptyGrid : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct NotResonant : Error { using Error::Error; };
struct InvalidSize : Error { using Error::Error; };
struct SingularSystem : Error { using Error::Error; };
struct TailNotConverged : Error { using Error::Error; };
struct PacketLeavesBand : Error { using Error::Error; };
struct BoundaryContamination : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };
struct ToleranceExceeded : Error { using Error::Error; };

} // namespace cra
