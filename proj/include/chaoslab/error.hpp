#pragma once

#include <stdexcept>
#include <string>

namespace chaoslab {

enum class ErrorCode {
  invalid_argument,
  parse,
  alphabet_mismatch,
  negative_distance,
  negative_tolerance,
  factor_mismatch,
  signature_mismatch,
  budget_too_large,
  exact_equality_unsupported,
  outside_domain,
  outside_disk,
  no_oracle,
  missing_fixed_point,
  config_parse,
  constructor_precondition,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace chaoslab
