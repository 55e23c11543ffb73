#ifndef TERASENSE_ERRORS_HPP
#define TERASENSE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace terasense {

// Malformed input files (HITRAN records, CSV, JSON configs).
class FormatError : public std::runtime_error {
public:
    explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

// Precondition violations on otherwise well-formed values.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure (singular system, diverged training run).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace terasense

#endif
