#pragma once

#include <stdexcept>
#include <string>

namespace mbuw {

// Every failure raised by the library derives from Error so callers (the CLI
// in particular) can map the category onto an exit status.
enum class ErrorKind { Domain, Io, Parse, Validation, Convergence, Numerical };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Argument outside the support of a function or parameter space.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(ErrorKind::Domain, what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(ErrorKind::Io, what) {}
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(ErrorKind::Parse, what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(ErrorKind::Validation, what) {}
};

// Iterative routine failed to produce a usable answer (bracketing failure,
// iteration budget exhausted where that is fatal).
class ConvergenceError : public Error {
public:
    explicit ConvergenceError(const std::string& what) : Error(ErrorKind::Convergence, what) {}
};

// Singular systems and non-finite evaluations inside numerical kernels.
class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& what) : Error(ErrorKind::Numerical, what) {}
};

}  // namespace mbuw
