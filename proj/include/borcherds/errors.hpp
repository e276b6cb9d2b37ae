#pragma once

#include <stdexcept>
#include <string>

namespace borcherds {

/// Failure categories. The CLI maps each one to a fixed exit code.
enum class ErrorKind {
    invalid_input,          // precondition on user-supplied data
    arithmetic,             // division by zero, non-unit inversion
    insufficient_precision, // series coefficient beyond known precision
    convergence,            // point outside the product's convergence region
    wall,                   // point on a Weyl-chamber wall
    degenerate,             // divisor hit, cusp vector, inconclusive winding
    internal
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string &what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline const char *to_string(ErrorKind k) {
    switch (k) {
    case ErrorKind::invalid_input: return "invalid_input";
    case ErrorKind::arithmetic: return "arithmetic";
    case ErrorKind::insufficient_precision: return "insufficient_precision";
    case ErrorKind::convergence: return "convergence";
    case ErrorKind::wall: return "wall";
    case ErrorKind::degenerate: return "degenerate";
    case ErrorKind::internal: return "internal";
    }
    return "internal";
}

[[noreturn]] inline void fail(ErrorKind kind, const std::string &what) {
    throw Error(kind, what);
}

inline void require(bool cond, ErrorKind kind, const std::string &what) {
    if (!cond)
        fail(kind, what);
}

} // namespace borcherds
