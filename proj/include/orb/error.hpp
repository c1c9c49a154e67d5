#pragma once

#include <stdexcept>
#include <string>

namespace orb {

// Every failure carries a stable code (e.g. "DuplicateHeight") so callers and
// the CLI can dispatch on it without parsing messages.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& what) {
    throw Error(code, what);
}

}  // namespace orb
