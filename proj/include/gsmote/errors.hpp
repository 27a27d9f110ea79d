#pragma once

#include <stdexcept>
#include <string>

namespace gsmote {

// Malformed or unusable input data (CSV problems, empty classes, ...).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Parameter tuples that cannot be satisfied by the given data.
class InfeasibleError : public std::runtime_error {
public:
    explicit InfeasibleError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace gsmote
