#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rumid {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* reason() const noexcept { return "error"; }
};

/// Input that does not satisfy an operation's preconditions (malformed
/// preference, missing menu, inconsistent dimensions, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
  const char* reason() const noexcept override { return "invalid-input"; }
};

/// A well-formed input that the model rejects (e.g. a support violation or
/// an infeasible support restriction).
class DomainError : public Error {
 public:
  using Error::Error;
  const char* reason() const noexcept override { return "domain-rejection"; }
};

/// A size guard tripped: universe too large, too many paths, etc.
class CapExceeded : public Error {
 public:
  CapExceeded(const std::string& what, std::uint64_t count, std::uint64_t cap)
      : Error(what + ": " + std::to_string(count) + " exceeds cap " + std::to_string(cap)),
        count_(count),
        cap_(cap) {}
  const char* reason() const noexcept override { return "cap-exceeded"; }
  std::uint64_t count() const noexcept { return count_; }
  std::uint64_t cap() const noexcept { return cap_; }

 private:
  std::uint64_t count_;
  std::uint64_t cap_;
};

}  // namespace rumid
