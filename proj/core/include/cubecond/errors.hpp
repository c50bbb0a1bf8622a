#pragma once

#include <stdexcept>
#include <string>

namespace cubecond {

// Bad arguments (dimension mismatch, out-of-range index, zero polynomial
// where a condition number is requested, ...) are reported with
// std::invalid_argument. The types below cover the remaining failure modes.

/// A theorem's hypothesis does not hold for the given input, so the
/// corresponding estimate cannot be evaluated.
class HypothesisViolated : public std::domain_error {
 public:
  explicit HypothesisViolated(const std::string& what) : std::domain_error(what) {}
};

/// The support of the polynomial cannot realise the requested perturbation.
class SupportTooSmall : public std::runtime_error {
 public:
  explicit SupportTooSmall(const std::string& what) : std::runtime_error(what) {}
};

/// The complex-root oracle did not converge.
class OracleFailure : public std::runtime_error {
 public:
  explicit OracleFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cubecond
