#pragma once

#include <stdexcept>
#include <string>

namespace qclt {

// Error taxonomy. The CLI maps categories onto exit codes:
//   std::invalid_argument, std::domain_error, unsupported_error -> 2
//   io_error                                                    -> 3
//   numeric_error                                               -> 4

// A request outside the supported envelope: expansion caps, d > 2 quadrature,
// non-radial characteristic functions fed to the radial extractor.
class unsupported_error : public std::invalid_argument {
public:
    explicit unsupported_error(const std::string& what) : std::invalid_argument(what) {}
};

// An iteration or quadrature failed to reach its requested tolerance, or an
// internal consistency check failed on values that passed validation.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qclt
