#pragma once

#include <stdexcept>
#include <string>

namespace causalc {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A document could not be parsed or failed schema validation.
class ParseError : public Error {
  public:
    using Error::Error;
};

/// Shapes, supports or dimensions do not line up.
class DimensionError : public Error {
  public:
    using Error::Error;
};

/// An operator assumed localized on a support turned out not to be.
/// `residual` is the worst off-support weight observed; `node` is the
/// origin node of the gate being synthesized, or -1 when not applicable.
class LocalizationViolation : public Error {
  public:
    LocalizationViolation(double residual, int node = -1)
        : Error("operator is not localized on the requested support (off-support residual " +
                std::to_string(residual) +
                (node >= 0 ? ", node " + std::to_string(node) : std::string{}) + ")"),
          residual_(residual), node_(node) {}

    double residual() const noexcept { return residual_; }
    int node() const noexcept { return node_; }

  private:
    double residual_;
    int node_;
};

/// An extracted local block failed its unitarity check.
class NonUnitaryBlock : public Error {
  public:
    NonUnitaryBlock(double residual, int node = -1)
        : Error("extracted block is not unitary (residual " + std::to_string(residual) +
                (node >= 0 ? ", node " + std::to_string(node) : std::string{}) + ")"),
          residual_(residual), node_(node) {}

    double residual() const noexcept { return residual_; }
    int node() const noexcept { return node_; }

  private:
    double residual_;
    int node_;
};

/// A certification routine refused a non-unitary input.
class NotUnitaryError : public Error {
  public:
    explicit NotUnitaryError(double residual)
        : Error("operator is not unitary (residual " + std::to_string(residual) + ")"),
          residual_(residual) {}

    double residual() const noexcept { return residual_; }

  private:
    double residual_;
};

/// Translated copies of a block differ beyond tolerance.
class ShiftInvarianceViolation : public Error {
  public:
    explicit ShiftInvarianceViolation(double deviation, const std::string &what_part = "operator")
        : Error(what_part + " is not shift-invariant (deviation " + std::to_string(deviation) + ")"),
          deviation_(deviation) {}

    double deviation() const noexcept { return deviation_; }

  private:
    double deviation_;
};

/// The automaton does not preserve the quiescent configuration.
class QuiescentViolation : public Error {
  public:
    explicit QuiescentViolation(double deviation)
        : Error("operator does not fix the quiescent configuration (deviation " +
                std::to_string(deviation) + ")"),
          deviation_(deviation) {}

    double deviation() const noexcept { return deviation_; }

  private:
    double deviation_;
};

} // namespace causalc
