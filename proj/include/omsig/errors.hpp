#pragma once

#include <stdexcept>
#include <string>

namespace omsig {

// Raised for malformed arguments: bad words, singular inverses, non-hermitian forms...
class invalid_input : public std::invalid_argument {
public:
    explicit invalid_input(const std::string& what) : std::invalid_argument(what) {}
};

// Raised when a computation cannot produce a certified answer.
class computation_error : public std::runtime_error {
public:
    explicit computation_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace omsig
