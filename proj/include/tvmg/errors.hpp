#pragma once

#include <stdexcept>
#include <string>

namespace tvmg {

/// Malformed or unusable input: bad values, broken files, empty samples.
class data_error : public std::runtime_error {
public:
    explicit data_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numeric failure during estimation: singular systems, undefined statistics.
class estimation_error : public std::runtime_error {
public:
    explicit estimation_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace tvmg
