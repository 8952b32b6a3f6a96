#pragma once

#include <stdexcept>
#include <string>

namespace oddwidth {

// Every error raised by the library carries a short machine-readable tag
// (e.g. "not-bipartite") next to the human readable message.
class Error : public std::runtime_error {
public:
    Error(std::string tag, const std::string& what)
        : std::runtime_error(tag + ": " + what), tag_(std::move(tag)) {}
    const std::string& tag() const noexcept { return tag_; }

private:
    std::string tag_;
};

// Bad input: malformed files, violated preconditions, wrong graph class.
class InvalidInput : public Error {
public:
    using Error::Error;
};

// A search exceeded its configured size limit or node budget. The CLI maps
// this to exit code 2.
class InstanceTooLarge : public Error {
public:
    explicit InstanceTooLarge(const std::string& what, std::string tag = "instance-too-large")
        : Error(std::move(tag), what) {}
};

} // namespace oddwidth
