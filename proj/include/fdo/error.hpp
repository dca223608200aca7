#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fdo {

enum class ErrorCode {
  invalid_pid,
  invalid_prefix,
  invalid_key,
  duplicate_pid,
  duplicate_key,
  not_found,
  unknown_pid,
  kind_mismatch,
  unresolved_profile,
  validation_failed,
  unexpressible_target_set,
  model_mismatch,
  model_unset,
  dangling_reference,
  empty_sample,
  parse_error,
  io_error,
};

std::string_view to_string(ErrorCode code);

enum class ViolationKind {
  missing_mandatory,
  unregistered_key,
  restricted_value,
  missing_profile,
};

std::string_view to_string(ViolationKind kind);

// One conformance failure of a record against its profile and the
// registered attribute definitions.
struct Violation {
  ViolationKind kind;
  std::string key;
  std::string detail;

  friend bool operator==(const Violation&, const Violation&) = default;
  friend auto operator<=>(const Violation&, const Violation&) = default;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  Error(ErrorCode code, const std::string& what, std::vector<std::string> subjects);
  Error(ErrorCode code, const std::string& what, std::vector<Violation> violations);

  ErrorCode code() const noexcept { return code_; }
  // Pids or keys the error is about, e.g. the implied operation set on model-mismatch.
  const std::vector<std::string>& subjects() const noexcept { return subjects_; }
  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  ErrorCode code_;
  std::vector<std::string> subjects_;
  std::vector<Violation> violations_;
};

}  // namespace fdo
