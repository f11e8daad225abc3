#pragma once

#include <stdexcept>
#include <string>

namespace tpadic {

// Base of every library failure. The module name is kept separately so the
// CLI can report it in structured form.
class Error : public std::runtime_error {
 public:
  Error(std::string module, const std::string& cause)
      : std::runtime_error(module + ": " + cause), module_(std::move(module)), cause_(cause) {}

  const std::string& module() const noexcept { return module_; }
  const std::string& cause() const noexcept { return cause_; }

 private:
  std::string module_;
  std::string cause_;
};

// Input that the caller must fix (bad polynomial, rho below threshold, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

// Valid input outside what this implementation handles (index divisors, ...).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

// Not enough p-adic or floating precision to decide; callers may retry higher.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

// An internal consistency check failed. Always a bug or a false theorem.
class InvariantError : public Error {
 public:
  using Error::Error;
};

// Work estimate exceeds the configured memory/time budget.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// A hypothesis of a lifting lemma does not hold; condition() is its index.
class PreconditionError : public Error {
 public:
  PreconditionError(std::string module, int condition, const std::string& cause)
      : Error(std::move(module), "condition (" + std::to_string(condition) + ") " + cause),
        condition_(condition) {}

  int condition() const noexcept { return condition_; }

 private:
  int condition_;
};

}  // namespace tpadic
