#pragma once

#include <stdexcept>
#include <string>

namespace fudge {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad user input: malformed specs, empty candidate lists, invalid configs.
struct InvalidArgument : Error {
  using Error::Error;
};

// Matrix/vector dimensions do not agree.
struct ShapeError : Error {
  using Error::Error;
};

// A least-squares design is rank deficient.
struct RankError : Error {
  using Error::Error;
};

// Non-finite values or diverging iterations.
struct NumericError : Error {
  using Error::Error;
};

// Too few samples for the requested statistic.
struct InsufficientSampleError : Error {
  using Error::Error;
};

// Two inputs were observed on different time grids.
struct GridMismatchError : Error {
  using Error::Error;
};

// A ROC target edge set is empty or complete, leaving the AUC undefined.
struct DegenerateTruthError : Error {
  using Error::Error;
};

// Random-structure generation could not satisfy its constraints.
struct GenerationError : Error {
  using Error::Error;
};

// File I/O failure; message carries the offending path.
struct IoError : Error {
  using Error::Error;
};

}  // namespace fudge
