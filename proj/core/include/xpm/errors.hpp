#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace xpm {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the domain of a formula (nonpositive length, |q| past the
// trapping edge, z outside the medium, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Ω_d = 0 makes the polariton purely atomic; the equations of motion do not
// apply there.
class DegenerateDriveError : public DomainError {
public:
    using DomainError::DomainError;
};

// Malformed configuration document. Carries the key path and source line
// (line is 0 when unknown).
class ConfigError : public Error {
public:
    ConfigError(std::string path, int line, const std::string& what);

    const std::string& path() const noexcept { return path_; }
    int line() const noexcept { return line_; }

private:
    std::string path_;
    int line_;
};

// Physically invalid inputs. `fields()` names every violated invariant.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<std::string> fields);

    const std::vector<std::string>& fields() const noexcept { return fields_; }

private:
    std::vector<std::string> fields_;
};

// Integrator instability, norm drift, ill-conditioned extraction.
class NumericalError : public Error {
public:
    using Error::Error;
};

}  // namespace xpm
