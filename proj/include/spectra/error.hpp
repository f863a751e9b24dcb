#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spectra {

enum class ErrorKind {
  InvalidInput,
  NotPSD,
  Singular,
  IndexError,
  RegimeError,
  SpecError,
  InsufficientSamples,
  Unsupported,
  CalibrationFailed,
  NotCalibratable,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library. Callers branch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace spectra
