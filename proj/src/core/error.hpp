#pragma once

#include <stdexcept>
#include <string>

namespace qsub {

enum class ErrorCode {
  invalid_argument,
  invalid_dimension,
  incompatible_operands,
  invalid_coset,
  invalid_coset_family,
  invalid_direction,
  not_divisible,
  invalid_dilation,
  level_too_large,
  hypothesis_violated,
  insufficient_sum_rules,
  invalid_parameters,
  parse_error,
  io_error,
  unsupported,
  unsupported_dimension,
  numerical_failure,
  no_convergence,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace qsub
