#ifndef VSS_ERRORS_HPP
#define VSS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace vss {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid mathematical input (argument outside the supported domain).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// Invalid configuration (bad degree, step, range, ...). Maps to CLI exit code 2.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// Exactly singular pivot during LU elimination.
class SingularMatrixError : public Error {
public:
    SingularMatrixError(const std::string& msg, int pivot) : Error(msg), pivot_index(pivot) {}
    int pivot_index;
};

// Matrix expected to be positive definite is not.
class DefinitenessError : public Error {
public:
    DefinitenessError(const std::string& msg, double eig) : Error(msg), offending_eigenvalue(eig) {}
    double offending_eigenvalue;
};

// Iterative procedure failed to converge.
class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& msg) : Error(msg) {}
};

// Two quantities that must agree (e.g. a rotation count that should be integer) do not.
class InconsistencyError : public Error {
public:
    explicit InconsistencyError(const std::string& msg) : Error(msg) {}
};

} // namespace vss

#endif
