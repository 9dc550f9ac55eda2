#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace credal {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Agenda construction: non-binary entries, empty matrix, bad shapes.
struct InvalidAgenda : Error {
  using Error::Error;
};

// Agenda with two identical worlds (columns).
struct DegenerateAgenda : Error {
  using Error::Error;
};

// World index out of range.
struct InvalidWorld : Error {
  using Error::Error;
};

// Credence entries outside [0,1].
struct InvalidCredence : Error {
  using Error::Error;
};

// Mismatched lengths between credences, agendas, or weights.
struct ShapeError : Error {
  using Error::Error;
};

// Input for which the requested operation is undefined (e.g. rescaling an
// all-zero credence).
struct DegenerateCredence : Error {
  using Error::Error;
};

// Profile for which the requested pool is undefined (e.g. a geometric pool
// whose normalizer vanishes on every cell).
struct DegenerateProfile : Error {
  using Error::Error;
};

// Argument outside the invertible range of a generator derivative.
struct RangeError : Error {
  using Error::Error;
};

// Caller violated a documented precondition of a check or operation.
struct PreconditionError : Error {
  using Error::Error;
};

// Numeric solver failed: bracket failure, iteration cap, no stationary point.
// Carries the best iterate found so the caller can inspect partial progress.
struct SolverError : Error {
  SolverError(const std::string& what, std::vector<double> best = {})
      : Error(what), best_iterate(std::move(best)) {}
  std::vector<double> best_iterate;
};

// Problem too large for an exhaustive method.
struct ScaleError : Error {
  using Error::Error;
};

// A method that cannot be formulated at all for the given inputs, as opposed
// to one that merely fails numerically.
struct UnformulableMethod : Error {
  using Error::Error;
};

}  // namespace credal
