#pragma once

#include <stdexcept>
#include <string>

namespace diffmat {

// A work-size guard tripped: the requested enumeration, search or grid is
// larger than the configured budget.
class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

// A result failed its internal integrity check (e.g. the DFT rounding
// residual); the caller should fall back to another method.
class integrity_error : public std::runtime_error {
public:
    explicit integrity_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace diffmat
