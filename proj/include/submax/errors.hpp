#pragma once

#include <stdexcept>
#include <string>

namespace submax {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// An oracle payload produced a negative value (invalid instance).
class NegativeValueError : public Error {
  using Error::Error;
};

// marginal() was asked about an element already in the set.
class ElementPresentError : public Error {
  using Error::Error;
};

// Graph edge references an out-of-range endpoint.
class BadEdgeError : public Error {
  using Error::Error;
};

class NegativeWeightError : public Error {
  using Error::Error;
};

class BadUniverseIdError : public Error {
  using Error::Error;
};

class NegativeEntryError : public Error {
  using Error::Error;
};

// Input exceeds an exhaustive-computation cap.
class TooLargeError : public Error {
  using Error::Error;
};

// A set that must be independent is not.
class DependentInputError : public Error {
  using Error::Error;
};

class DependentContractionError : public Error {
  using Error::Error;
};

// A structural guarantee failed; signals a broken oracle, not bad input.
class InternalContradictionError : public Error {
  using Error::Error;
};

class InfeasibleGroundError : public Error {
  using Error::Error;
};

class NotPartitionError : public Error {
  using Error::Error;
};

class TooManyFractionalError : public Error {
  using Error::Error;
};

class BadGridError : public Error {
  using Error::Error;
};

class NoTwoBasesError : public Error {
  using Error::Error;
};

class BadParamsError : public Error {
  using Error::Error;
};

class KindMismatchError : public Error {
  using Error::Error;
};

}  // namespace submax
