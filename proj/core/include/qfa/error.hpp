#pragma once

#include <stdexcept>
#include <string>

namespace qfa {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A word contains a symbol outside the input alphabet.
class UnknownSymbolError : public Error {
 public:
  using Error::Error;
};

/// Specified images of a partial operator are not orthonormal.
class NotCompletableError : public Error {
 public:
  using Error::Error;
};

class NotReversibleError : public Error {
 public:
  using Error::Error;
};

/// The minimal automaton contains the construction that rules out
/// reversible recognition.
class ForbiddenConstructionError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// A configured size limit (monoid cap, state budget, tensor power) was hit.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A bounded randomized search gave up.
class SearchFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace qfa
