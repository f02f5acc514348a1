#pragma once

#include <stdexcept>
#include <string>

namespace canardlab {

/// Error categories shared by the C++ core and the C API status codes.
enum class ErrorCode {
    InvalidArgument = 1,
    Validation,
    Domain,
    Parse,
    Numerical,
    NoCrossing,
    NotConverged,
    Geometry,
    BlowUp,
    Io,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

struct ValidationError : Error {
    explicit ValidationError(const std::string& what) : Error(ErrorCode::Validation, what) {}
};

struct DomainError : Error {
    explicit DomainError(const std::string& what) : Error(ErrorCode::Domain, what) {}
};

struct GeometryError : Error {
    explicit GeometryError(const std::string& what) : Error(ErrorCode::Geometry, what) {}
};

struct NumericalError : Error {
    explicit NumericalError(const std::string& what) : Error(ErrorCode::Numerical, what) {}
};

struct NoCrossingError : Error {
    explicit NoCrossingError(const std::string& what) : Error(ErrorCode::NoCrossing, what) {}
};

struct NotConvergedError : Error {
    explicit NotConvergedError(const std::string& what) : Error(ErrorCode::NotConverged, what) {}
};

struct IoError : Error {
    explicit IoError(const std::string& what) : Error(ErrorCode::Io, what) {}
};

/// Syntax error with a 1-based source position.
class ParseError : public Error {
public:
    ParseError(const std::string& message, int line, int column)
        : Error(ErrorCode::Parse,
                "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
          line_(line), column_(column) {}
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

/// Raised when a closed-form chart orbit is evaluated at or past its blow-up time.
class BlowUpError : public Error {
public:
    explicit BlowUpError(double t_star)
        : Error(ErrorCode::BlowUp, "orbit blows up at t* = " + std::to_string(t_star)), t_star_(t_star) {}
    double t_star() const noexcept { return t_star_; }

private:
    double t_star_;
};

}  // namespace canardlab
