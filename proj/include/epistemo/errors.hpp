#pragma once

#include <stdexcept>
#include <string>

namespace epistemo {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A file could not be opened or read.
class LoadError : public Error {
 public:
  using Error::Error;
};

/// Input data violates a domain invariant (duplicate ids, empty documents, bad config).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A component was used outside its contract (dimension mismatch, bad request).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// An external endpoint could not be reached or answered with a non-2xx status.
/// Always retryable; `status()` is 0 when no HTTP response was received.
class TransportError : public Error {
 public:
  TransportError(const std::string& what, int status) : Error(what), status_(status) {}
  int status() const noexcept { return status_; }
  bool retryable() const noexcept { return true; }

 private:
  int status_;
};

class GenerationError : public Error {
 public:
  using Error::Error;
};

/// Malformed transcript or graph file.
class ParseError : public Error {
 public:
  using Error::Error;
};

class IndexBuildError : public Error {
 public:
  IndexBuildError(const std::string& what, std::string chunk_id)
      : Error(what), chunk_id_(std::move(chunk_id)) {}
  const std::string& chunk_id() const noexcept { return chunk_id_; }

 private:
  std::string chunk_id_;
};

}  // namespace epistemo
