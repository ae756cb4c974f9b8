#pragma once

#include <stdexcept>
#include <string>

namespace fewdist {

enum class ErrorKind {
  invalid_argument,  // precondition violated by the caller
  overflow,          // exact integer result does not fit 64 bits
  budget,            // a configured memory or scan cap would be exceeded
  integrity,         // an internal consistency check failed
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorKind::invalid_argument, what);
}

}  // namespace fewdist
