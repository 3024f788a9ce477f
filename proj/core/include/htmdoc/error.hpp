#ifndef HTMDOC_ERROR_HPP
#define HTMDOC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace htmdoc {

class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad arguments or violated preconditions.
class ContractError : public Error {
public:
  using Error::Error;
};

// Dataset loading problems (missing directory, unreadable file, empty corpus).
class IngestError : public Error {
public:
  using Error::Error;
};

// Model fitting problems (empty vocabulary, degenerate corpus).
class FitError : public Error {
public:
  using Error::Error;
};

// Numerical failures (non-convergence, all-zero matrix).
class NumericError : public Error {
public:
  using Error::Error;
};

// Model bundle I/O failures. Checksum, version and truncation each get
// their own type so callers can tell them apart.
class SerializeError : public Error {
public:
  using Error::Error;
};
class ChecksumError : public SerializeError {
public:
  using SerializeError::SerializeError;
};
class VersionError : public SerializeError {
public:
  using SerializeError::SerializeError;
};
class TruncatedError : public SerializeError {
public:
  using SerializeError::SerializeError;
};

}  // namespace htmdoc

#endif
