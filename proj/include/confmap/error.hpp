#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace confmap {

/// Failure category. Each maps onto a stable CLI exit code.
enum class ErrorKind {
  Config,     ///< bad input, violated precondition (exit 2)
  Numerical,  ///< solver or quadrature failure (exit 3)
  Invariant,  ///< a mathematical invariant of the result is broken (exit 4)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string module, const std::string& message)
      : std::runtime_error("[" + module + "] " + message),
        kind_(kind),
        module_(std::move(module)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& module() const noexcept { return module_; }

 private:
  ErrorKind kind_;
  std::string module_;
};

inline int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Config:
      return 2;
    case ErrorKind::Numerical:
      return 3;
    case ErrorKind::Invariant:
      return 4;
  }
  return 1;
}

}  // namespace confmap
