#pragma once

#include <stdexcept>
#include <string>

namespace lacunary {

// Base for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An operation was called outside its domain (k > |E|, ell > |E_k|, s too large, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Malformed textual input: decimal strings, JSON documents, config files.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace lacunary
