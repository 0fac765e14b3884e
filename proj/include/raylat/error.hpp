#pragma once

#include <stdexcept>
#include <string>

namespace raylat {

/// Library error carrying a module-qualified code such as "fielddata.parse"
/// or "algebra.factorization". The CLI prints the code next to the message.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

/// Raised when an interval comparison cannot be decided at the current
/// precision. Callers escalate precision and retry.
class Indeterminate : public std::runtime_error {
 public:
  explicit Indeterminate(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace raylat
