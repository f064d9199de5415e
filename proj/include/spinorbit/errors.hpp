#pragma once

#include <stdexcept>
#include <string>

namespace spinorbit {

// Bad user-supplied parameter (grid sizes, spectrum shape, probabilities...).
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Base for failures that arise from the numerics of a well-formed request.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An OAM shift would leave the configured window |m| <= m_max.
class TruncationOverflow : public NumericError {
 public:
  using NumericError::NumericError;
};

// Fringe normalization vanishes (no amplitude on either surviving pair).
class DegenerateNormalization : public NumericError {
 public:
  using NumericError::NumericError;
};

// Analyzer is orthogonal to every transmitted mode of the joint state.
class OrthogonalAnalyzer : public NumericError {
 public:
  using NumericError::NumericError;
};

class EmptyProjection : public NumericError {
 public:
  using NumericError::NumericError;
};

// Biphoton support does not fit in a 2x2 product of per-arm modes.
class UnsupportedShape : public NumericError {
 public:
  using NumericError::NumericError;
};

class ZeroDenominator : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace spinorbit
