#pragma once

#include <stdexcept>
#include <string>

namespace lowtw {

enum class ErrorKind {
    argument,
    domain,
    embedding,
    resource,
    io,
    validation,
};

const char* to_string(ErrorKind kind);

// Single exception type for the core; the C API maps `kind` onto status codes.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

inline void require(bool cond, ErrorKind kind, const char* what) {
    if (!cond) {
        fail(kind, what);
    }
}

}  // namespace lowtw
