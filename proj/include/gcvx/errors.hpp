#pragma once

#include <stdexcept>
#include <string>

namespace gcvx {

/// Base of every error the library throws on bad input.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the operation's domain (bad weight, point not in a carrier, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An enumeration or materialization guard was exceeded.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A map failed a measurability requirement.
class MeasurabilityError : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration, unknown suite or stale reference.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace gcvx
