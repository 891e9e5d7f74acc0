#pragma once

#include <stdexcept>
#include <string>

namespace lattab {

enum class ErrorKind {
  NonPositiveArgument,
  InvalidParameter,
  DegenerateBasis,
  NotConvergent,
  Budget,
  PoleAt3Halves,
  NotCritical,
  NoBracket,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace lattab
