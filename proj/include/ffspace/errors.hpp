#pragma once

#include <stdexcept>
#include <string>

namespace ffspace {

/// Malformed or semantically invalid user input (CLI exit code 2).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input is valid but outside what the library can compute: an uncertified
/// factor over Q, a place of residue degree > 2, a filtration at a
/// place whose residue field is larger than K.
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A structural claim that must hold for valid input did not. For valid
/// input this is an implementation bug (CLI exit code 1).
class TheoremViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A construction needs a root in K that does not exist there.
class NoRootError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Series arithmetic ran out of precision where the symbolic zero test
/// could not settle the question either.
class PrecisionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace ffspace
