#ifndef BCSHAPE_ERRORS_HPP
#define BCSHAPE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bcshape {

/// Thrown when the two receivers are not in degraded order (snr1 <= snr2).
struct degradedness_error : std::domain_error {
    explicit degradedness_error(const std::string& what) : std::domain_error(what) {}
};

/// Thrown when the Lagrange multiplier bracket cannot enforce the power budget.
struct bracket_error : std::runtime_error {
    explicit bracket_error(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown on malformed configuration input (CLI exit code 2).
struct config_error : std::runtime_error {
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace bcshape

#endif
