#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace glasso {

enum class ErrorCode {
  empty_partition,
  zero_group_size,
  overlapping_groups,
  non_covering_groups,
  invalid_argument,
  dimension_mismatch,
  non_unit_column,
  undefined_coherence,
  too_many_groups,
  rank_deficient,
  missing_certificate,
  not_converged,
  io_failure,
  format_error,
  unknown_key,
  malformed_config,
  missing_input,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::empty_partition: return "empty partition";
    case ErrorCode::zero_group_size: return "zero group size";
    case ErrorCode::overlapping_groups: return "overlapping groups";
    case ErrorCode::non_covering_groups: return "groups do not cover columns";
    case ErrorCode::invalid_argument: return "invalid argument";
    case ErrorCode::dimension_mismatch: return "dimension mismatch";
    case ErrorCode::non_unit_column: return "column not unit norm";
    case ErrorCode::undefined_coherence: return "coherence undefined";
    case ErrorCode::too_many_groups: return "too many groups";
    case ErrorCode::rank_deficient: return "rank deficient";
    case ErrorCode::missing_certificate: return "missing certificate";
    case ErrorCode::not_converged: return "not converged";
    case ErrorCode::io_failure: return "i/o failure";
    case ErrorCode::format_error: return "format error";
    case ErrorCode::unknown_key: return "unknown key";
    case ErrorCode::malformed_config: return "malformed config";
    case ErrorCode::missing_input: return "missing input";
  }
  return "unknown";
}

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool ok, ErrorCode code, const std::string& message) {
  if (!ok) fail(code, message);
}

}  // namespace glasso
