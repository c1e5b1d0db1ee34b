#pragma once

#include <stdexcept>
#include <string>

namespace fctdrem {

/// Malformed or out-of-range scenario configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Filesystem failure, with the offending path in the message.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace fctdrem
