#pragma once

#include <stdexcept>
#include <string>

namespace glosskit {

// Base class for every error raised by the library. The CLI maps these to
// exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File could not be opened, read, written or renamed.
class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed input data: invalid UTF-8, bad TSV line, unaligned corpora.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Caller violated an operation's precondition (empty corpus, bad index...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace glosskit
