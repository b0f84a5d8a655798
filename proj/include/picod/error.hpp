#pragma once

#include <stdexcept>
#include <string>

namespace picod {

enum class ErrorCode {
  empty_request_set,
  index_out_of_range,
  invalid_argument,
  dimension_mismatch,
  field_mismatch,
  not_independent,
  overlapping_components,
  invalid_choice,
  syntax_error,
  infeasible_params,
  no_scheme_within_max_len,
  instance_too_large,
  budget_exhausted,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Parse failures carry the 1-based line and column of the offending token.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t column, const std::string& message);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace picod
