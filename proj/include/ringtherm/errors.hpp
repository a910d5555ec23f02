#pragma once

#include <stdexcept>
#include <string>

namespace ringtherm {

// Error classes map 1:1 onto CLI exit codes: config=2, compute=3, io=4.

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ComputeError : std::runtime_error {
    explicit ComputeError(const std::string& msg) : std::runtime_error(msg) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace ringtherm
