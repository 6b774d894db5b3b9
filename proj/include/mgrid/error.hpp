#pragma once

#include <stdexcept>
#include <string>

namespace mgrid {

enum class ErrorCode {
  InvalidArgument = 1,
  Precondition = 2,
  NonConvergence = 3,
  Unconverged = 4,
  Internal = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool ok, ErrorCode code, const std::string& what) {
  if (!ok) fail(code, what);
}

}  // namespace mgrid
