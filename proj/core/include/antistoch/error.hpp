#pragma once

#include <stdexcept>
#include <string>

namespace antistoch {

// Contract violation on an argument (bad index, length mismatch, out-of-range guard).
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// The requested construction does not exist for these parameters
// (degenerate degree window, invalid k, n below a schedule threshold).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Malformed serialized input.
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

// A hard invariant was observed to fail. Always an implementation bug.
class InvariantViolation : public std::logic_error {
 public:
  explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

}  // namespace antistoch
