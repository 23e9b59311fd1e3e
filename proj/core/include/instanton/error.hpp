#pragma once

#include <stdexcept>
#include <string>

namespace instanton {

// Input lies on (or numerically near) a locus where the requested
// construction is undefined: eigenvalue collisions, singular conjugators,
// vanishing pairings.
class DegenerateInput : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A documented precondition failed (off-shell datum, wrong shape, l != 1).
class PreconditionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class DegreeCapExceeded : public std::length_error {
public:
  using std::length_error::length_error;
};

class SearchExhausted : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace instanton
