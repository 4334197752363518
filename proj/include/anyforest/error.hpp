#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace anyforest {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed forest, node index, state or step order.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// Dataset loading failures and sample/feature dimension mismatches.
class DataError : public Error {
 public:
  using Error::Error;
};

// Rejected forest documents (wrong version, missing fields, invariant
// violations found while importing).
class SchemaError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// The generator only handles a subset of problems (e.g. binary-only QWYC).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

// The state lattice is larger than the configured cap. Raised before any
// allocation happens.
class LatticeCapExceeded : public Error {
 public:
  LatticeCapExceeded(std::uint64_t states, std::uint64_t cap)
      : Error("state lattice has " +
              (states == UINT64_MAX ? std::string(">2^64")
                                    : std::to_string(states)) +
              " states, exceeding the cap of " + std::to_string(cap) +
              "; use a squirrel order for forests of this size"),
        states_(states),
        cap_(cap) {}

  std::uint64_t states() const noexcept { return states_; }
  std::uint64_t cap() const noexcept { return cap_; }

 private:
  std::uint64_t states_;
  std::uint64_t cap_;
};

}  // namespace anyforest
