#pragma once

#include <stdexcept>
#include <string>

namespace hs {

// Error taxonomy mirrored by the C API status codes and CLI exit codes:
// invalid input -> 2, solver failure / internal fault -> 3.
enum class ErrorKind { InvalidInput, SolverFailure, Internal };

class HsError : public std::runtime_error {
public:
    HsError(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail_invalid(const std::string& message) {
    throw HsError(ErrorKind::InvalidInput, message);
}
[[noreturn]] inline void fail_solver(const std::string& message) {
    throw HsError(ErrorKind::SolverFailure, message);
}
[[noreturn]] inline void fail_internal(const std::string& message) {
    throw HsError(ErrorKind::Internal, message);
}

inline constexpr const char* kLibraryVersion = "1.0.0";

}  // namespace hs
