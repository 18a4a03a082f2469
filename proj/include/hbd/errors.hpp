#pragma once

#include <stdexcept>
#include <string>

namespace hbd {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ill-typed term, expression, tuple or wire.
class TypeError : public Error {
 public:
  using Error::Error;
};

/// Named composition whose side condition does not hold.
class CompositionError : public Error {
 public:
  using Error::Error;
};

/// Input to an algorithm violates its documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Kleene iteration did not reach a fixed point within the configured cap.
class FixpointDivergence : public Error {
 public:
  using Error::Error;
};

/// Malformed text (term syntax, JSON, CSV).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Well-formed JSON that does not follow the diagram schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// Wire endpoint or block port that does not resolve.
class DanglingPortError : public Error {
 public:
  using Error::Error;
};

/// Cyclic subsystem references.
class CycleError : public Error {
 public:
  using Error::Error;
};

}  // namespace hbd
