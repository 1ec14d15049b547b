#pragma once

#include <stdexcept>
#include <string>

namespace tvlab {

// Value outside the mathematical domain of an operation (bad probability,
// dimension mismatch, v > 1, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input document does not follow the expected JSON schema.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Enumeration over {0,1}^n refused because n exceeds the configured cap.
class CapExceeded : public std::length_error {
 public:
  CapExceeded(std::size_t n, std::size_t cap)
      : std::length_error("enumeration over 2^" + std::to_string(n) +
                          " outcomes exceeds the cap max_n=" + std::to_string(cap)),
        n_(n), cap_(cap) {}

  std::size_t requested() const noexcept { return n_; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t n_;
  std::size_t cap_;
};

// An identity that must hold by construction did not. Always a bug.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace tvlab
