#pragma once

#include <stdexcept>
#include <string>

namespace shellrecon {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain (x <= 0, |mu| > 1, r1 not in (0,1), ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Index combination that does not exist, e.g. |m| > n.
class IndexError : public Error {
 public:
  using Error::Error;
};

/// An unscaled result does not fit in a double. The message suggests the scaled form.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// A denominator or pivot vanished numerically (Neumann resonance, singular system).
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

/// The requested mode carries no usable information (zero Neumann amplitude or a
/// numerically degenerate inversion).
class IllPosedModeError : public Error {
 public:
  using Error::Error;
};

/// The measurement cannot come from any admissible configuration: target outside
/// the range of the monotone map, or per-mode estimates that disagree.
class InconsistentMeasurementError : public Error {
 public:
  using Error::Error;
};

/// No sign change of the nonuniqueness determinant inside the search interval.
class NoRootError : public Error {
 public:
  using Error::Error;
};

/// Malformed serialized input.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace shellrecon
