#pragma once

#include <stdexcept>
#include <string>

namespace epigauge {

/// Failure categories. Each maps onto one CLI exit code / C API status.
enum class ErrorKind {
  InvalidArgument,  // bad parameter values (nonpositive radius, negative eps, ...)
  Parse,            // problem description could not be read
  Domain,           // evaluation outside a function's domain or an uncovered point
  Precondition,     // hypotheses of a construction or sweep not met
  OracleCap,        // lattice exceeds the point cap
  Inconsistent,     // a certificate contradicts itself or the data it claims to bracket
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

}  // namespace epigauge
