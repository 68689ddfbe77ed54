#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ranksched {

// Base for everything thrown by the library. `code()` mirrors the process
// exit contract of the CLI (and the C API status enum).
class Error : public std::runtime_error {
public:
  explicit Error(std::string msg) : std::runtime_error(std::move(msg)) {}
  virtual int code() const noexcept { return 1; }
};

// Malformed input: bad JSON shape, invalid rational, non-permutation list,
// parameter out of a family's domain, profile referencing unknown ids, ...
class ValidationError : public Error {
public:
  using Error::Error;
  int code() const noexcept override { return 2; }
};

// An operation was invoked outside its stated precondition (e.g. a job-level
// deviation in a set-level seniority game, Lag outside its domain).
class ContractError : public Error {
public:
  using Error::Error;
  int code() const noexcept override { return 2; }
};

// Exhaustive enumeration refused because the profile space exceeds the cap.
class CapError : public Error {
public:
  CapError(std::string msg, std::uint64_t required, std::uint64_t cap)
      : Error(std::move(msg)), required_(required), cap_(cap) {}
  int code() const noexcept override { return 3; }
  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t cap() const noexcept { return cap_; }

private:
  std::uint64_t required_;
  std::uint64_t cap_;
};

// A checked internal invariant failed. Always a bug, never a user error.
class InternalError : public Error {
public:
  using Error::Error;
  int code() const noexcept override { return 5; }
};

}  // namespace ranksched
