#pragma once

#include <stdexcept>
#include <string>

namespace ramify {

enum class ErrorCode {
  InvalidArgument,
  NotEisenstein,
  GuardExceeded,
  ResidueMismatch,
  Parse,
  Internal,
};

// Single exception type for the library; the code lets the C layer and the
// CLI map failures onto status values and exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorCode::InvalidArgument, what);
}

}  // namespace ramify
