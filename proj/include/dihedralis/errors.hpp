#pragma once

#include <stdexcept>
#include <string>

namespace dihedralis {

// Engine failures carry a short machine-readable name (printed by the CLI)
// next to a human readable message.
class EngineError : public std::runtime_error {
public:
    EngineError(std::string name, const std::string& msg)
        : std::runtime_error(name + ": " + msg), name_(std::move(name)) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

[[noreturn]] inline void fail(const std::string& name, const std::string& msg = "") {
    throw EngineError(name, msg);
}

// Internal consistency checks that stay on in release builds.
#define DIH_ASSERT(cond, what)                                                   \
    do {                                                                         \
        if (!(cond)) ::dihedralis::fail("InternalError", std::string(what) +     \
                                        " (" #cond ")");                         \
    } while (0)

} // namespace dihedralis
