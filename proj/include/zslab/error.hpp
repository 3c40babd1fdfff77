#pragma once

#include <stdexcept>
#include <string>

namespace zslab {

// Error categories map one-to-one onto CLI exit codes.
enum class ErrorKind {
  Parse,         // malformed input file or checkpoint
  Input,         // argument outside its documented range
  Domain,        // well-formed input on which the operation is undefined
  Precondition,  // a stated precondition failed verification
  Budget,        // search budget exhausted
  Internal,      // a theorem-backed invariant was violated: a bug
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct ParseError : Error {
  ParseError(const std::string& what, int line = 0)
      : Error(ErrorKind::Parse, line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line(line) {}
  int line;
};

struct InputError : Error {
  explicit InputError(const std::string& what) : Error(ErrorKind::Input, what) {}
};

struct DomainError : Error {
  explicit DomainError(const std::string& what) : Error(ErrorKind::Domain, what) {}
};

struct PreconditionError : Error {
  explicit PreconditionError(const std::string& what) : Error(ErrorKind::Precondition, what) {}
};

struct InternalError : Error {
  explicit InternalError(const std::string& what) : Error(ErrorKind::Internal, what) {}
};

const char* to_string(ErrorKind kind) noexcept;

}  // namespace zslab
