#pragma once

#include <stdexcept>
#include <string>

namespace pgl2 {

// Every error path carries a stable machine-readable code next to the
// human-readable message; the CLI maps codes onto exit statuses.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what) : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const char* code, const std::string& msg) { throw Error(code, msg); }

inline void require(bool cond, const char* code, const std::string& msg) {
    if (!cond) fail(code, msg);
}

} // namespace pgl2
