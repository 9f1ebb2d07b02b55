#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qbrach {

// Machine-readable failure classes. The CLI prints code_name() verbatim.
enum class ErrorCode {
  InvalidArgument,
  DegenerateEndpoints,
  OrthogonalEndpoints,
  UnreachableTarget,
  UndefinedEfficiency,
};

inline std::string_view code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::DegenerateEndpoints: return "DEGENERATE_ENDPOINTS";
    case ErrorCode::OrthogonalEndpoints: return "ORTHOGONAL_ENDPOINTS";
    case ErrorCode::UnreachableTarget: return "UNREACHABLE_TARGET";
    case ErrorCode::UndefinedEfficiency: return "UNDEFINED_EFFICIENCY";
  }
  return "UNKNOWN";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorCode::InvalidArgument, what);
}

}  // namespace qbrach
