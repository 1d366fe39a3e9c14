#pragma once

#include <stdexcept>
#include <string>

namespace mfpca {

enum class ErrorCode {
  InvalidGrid,
  InvalidMatrix,
  Dimension,
  DegenerateFunction,
  InsufficientData,
  Truncation,
  DegenerateSpectrum,
  Config,
  Spec,
  SingularFit,
  Schema,
  Validation,
  Io,
};

const char* to_string(ErrorCode code) noexcept;

// All failures raised by the library carry one of the codes above; the C API
// maps them one-to-one onto mfpca_status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mfpca
