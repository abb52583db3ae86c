#ifndef GALMOD_ERRORS_HPP
#define GALMOD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace galmod {

// Base of all galmod errors.  The three direct subclasses map onto the
// tool's exit codes: InvalidInput -> 1, CapExceeded -> 2,
// InternalInvariant -> 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Raised when a group closure passes its element cap.  This is an error,
// never a silent truncation.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

// A postcondition the library guarantees by construction failed at run
// time.  Signals a bug in galmod itself, not bad input.
class InternalInvariant : public Error {
 public:
  using Error::Error;
};

class NonUnimodularGenerator : public InvalidInput {
 public:
  explicit NonUnimodularGenerator(const std::string& name)
      : InvalidInput("generator '" + name + "' is not unimodular"),
        generator_name(name) {}
  std::string generator_name;
};

class DimensionMismatch : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class NotSquare : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class NotSurjective : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class NotInjective : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class NotARoot : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class MissingSplitting : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class UnsupportedDegree : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class CoflasquenessViolated : public InternalInvariant {
 public:
  using InternalInvariant::InternalInvariant;
};

}  // namespace galmod

#endif  // GALMOD_ERRORS_HPP
