#ifndef DDR_ERRORS_HPP
#define DDR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ddr {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Errors caused by user-supplied data (mesh files, patterns, options).
/// The command-line tool maps this family to exit code 2.
class InputError : public Error {
public:
  using Error::Error;
};

class ParseError : public InputError {
public:
  using InputError::InputError;
};

class ReferenceError : public InputError {
public:
  using InputError::InputError;
};

class TopologyError : public InputError {
public:
  using InputError::InputError;
};

class GeometryError : public InputError {
public:
  using InputError::InputError;
};

/// Incompatible arguments to a polynomial or layout routine.
class DomainError : public Error {
public:
  using Error::Error;
};

/// A local system was singular or too badly conditioned to be trusted.
class ConditioningError : public Error {
public:
  using Error::Error;
};

/// Requested something beyond what the implementation supports.
class CapabilityError : public Error {
public:
  using Error::Error;
};

/// An invariant the library relies on was violated; always a bug or corrupted input.
class InternalError : public Error {
public:
  using Error::Error;
};

} // namespace ddr

#endif
