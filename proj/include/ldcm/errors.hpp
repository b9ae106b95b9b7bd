#pragma once

#include <stdexcept>
#include <string>

namespace ldcm {

/// Base of every error raised by the library. The CLI maps all of these to
/// exit status 2 (mathematically infeasible input).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a formula (negative mass, z outside [0,1]).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A named feasibility condition such as "q <= p" or
/// "sum k q_k > 2 sum q_k" does not hold.
class FeasibilityError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Odd total number of half-edges.
class ParityError : public Error {
 public:
  using Error::Error;
};

/// Operation applied to an object in the wrong state (e.g. an unfinished
/// exploration record).
class StateError : public Error {
 public:
  using Error::Error;
};

}  // namespace ldcm
