#pragma once

#include <stdexcept>
#include <string>

namespace fibprod {

// Thrown by interval primitives when the current working precision cannot
// decide a comparison, floor or sign. Callers running under
// with_escalation() retry at a higher precision; it never escapes a
// public operation.
class Undecided : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A certified decision could not be reached at the configured precision cap.
class PrecisionExhausted : public std::runtime_error {
 public:
  PrecisionExhausted(std::string operation, long cap_bits)
      : std::runtime_error("precision exhausted in " + operation + " at " +
                           std::to_string(cap_bits) + " bits"),
        operation_(std::move(operation)),
        cap_bits_(cap_bits) {}

  const std::string& operation() const noexcept { return operation_; }
  long cap_bits() const noexcept { return cap_bits_; }

 private:
  std::string operation_;
  long cap_bits_;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal consistency check failed (a computed result contradicts a
// property the pipeline relies on).
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fibprod
