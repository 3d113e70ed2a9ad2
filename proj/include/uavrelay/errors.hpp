#pragma once

#include <stdexcept>
#include <string>

namespace uavrelay {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input file (syntax, missing keys, wrong types).
struct ParseError : Error {
  using Error::Error;
};

// Well-formed input that violates a model invariant. The message names the invariant.
struct ValidationError : Error {
  using Error::Error;
};

// Rejection sampling could not place the swarm.
struct PlacementError : Error {
  using Error::Error;
};

// Input outside a formula's domain (e.g. link shorter than the reference distance).
struct DomainError : Error {
  using Error::Error;
};

// Array with no radiated power (all excitation weights zero).
struct DegenerateArrayError : Error {
  using Error::Error;
};

}  // namespace uavrelay
