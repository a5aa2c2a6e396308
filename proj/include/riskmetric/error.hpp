#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace riskmetric {

enum class ErrorKind {
  Asymmetry,
  TriangleViolation,
  NegativeDistance,
  ZeroOffDiagonal,
  NotSquare,
  DuplicateLabel,
  TooManyPoints,
  EmptySubset,
  SpaceMismatch,
  InvalidParams,
  EmptySection,
  MarginalMismatch,
  AxiomFailure,
  Parse,
};

const char* to_string(ErrorKind kind);

/// Library error. `indices` names the offending points/entries where relevant.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::vector<std::size_t> indices = {})
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        indices_(std::move(indices)) {}

  ErrorKind kind() const { return kind_; }
  const std::vector<std::size_t>& indices() const { return indices_; }

 private:
  ErrorKind kind_;
  std::vector<std::size_t> indices_;
};

}  // namespace riskmetric
