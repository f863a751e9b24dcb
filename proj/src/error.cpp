#include "spectra/error.hpp"

namespace spectra {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::IndexError: return "IndexError";
    case ErrorKind::RegimeError: return "RegimeError";
    case ErrorKind::SpecError: return "SpecError";
    case ErrorKind::InsufficientSamples: return "InsufficientSamples";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::CalibrationFailed: return "CalibrationFailed";
    case ErrorKind::NotCalibratable: return "NotCalibratable";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace spectra
