#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace knotcover {

// Domain failure with a stable machine-readable name. The CLI maps these to
// exit code 1 and prints the name; tests match on it.
class DomainError : public std::runtime_error {
public:
    DomainError(std::string name, const std::string& what)
        : std::runtime_error(name + ": " + what), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

[[noreturn]] inline void fail(const std::string& name, const std::string& msg) {
    throw DomainError(name, msg);
}

}  // namespace knotcover
