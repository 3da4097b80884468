#pragma once

#include <stdexcept>
#include <string>

namespace gk {

// Raised when an input violates a documented precondition. `name` is a short
// machine-readable identifier (e.g. "balanced", "xi_range").
class PreconditionError : public std::invalid_argument {
public:
    PreconditionError(std::string name, const std::string& what)
        : std::invalid_argument(what), name_(std::move(name)) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

// Raised when an iterative numerical procedure fails to reach its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(std::string name, const std::string& what)
        : std::runtime_error(what), name_(std::move(name)) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

inline void require(bool cond, const char* name, const std::string& what) {
    if (!cond) throw PreconditionError(name, what);
}

}  // namespace gk
