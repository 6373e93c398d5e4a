#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace semgraph {

/// Base class for every domain error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Input document does not follow the expected schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// Operation precondition violated by the caller.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

struct Diagnostic;

/// A graph was structurally readable but broke one or more invariants.
class InvariantError : public Error {
 public:
  InvariantError(const std::string& what, std::vector<std::string> details)
      : Error(what), details_(std::move(details)) {}

  const std::vector<std::string>& details() const noexcept { return details_; }

 private:
  std::vector<std::string> details_;
};

}  // namespace semgraph
