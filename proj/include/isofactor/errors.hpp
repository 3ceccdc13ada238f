#pragma once

#include <stdexcept>
#include <string>

namespace isofactor {

// Parameter outside a validity domain (singularity-free bounds, bad quantum numbers).
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// A denominator or seed function crosses zero on the working grid.
class SingularError : public std::runtime_error {
public:
    explicit SingularError(const std::string& what) : std::runtime_error(what) {}
};

// Iteration caps, non-convergence, failed numeric gates.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace isofactor
