#pragma once

#include <stdexcept>
#include <string>

namespace muhankel {

// Numeric values double as CLI exit codes and C API status codes.
enum class ErrorKind : int {
  Internal = 1,
  Validation = 2,
  Numerical = 3,
  Inapplicable = 4,
  Attribution = 5,
  Lookup = 6,
  Resource = 7,
  Io = 8,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace muhankel
