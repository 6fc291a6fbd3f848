#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ltl {

/// Base class for every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file. `line()` is 1-based, 0 when unknown.
class ParseError : public Error
{
public:
    ParseError(const std::string& message, std::size_t line)
        : Error(line > 0 ? message + " at line " + std::to_string(line) : message)
        , m_line(line)
    {}

    std::size_t line() const { return m_line; }

private:
    std::size_t m_line;
};

/// Topology violations: non-manifold, inconsistently oriented, bad indices.
class MeshError : public Error
{
public:
    using Error::Error;
};

/// Raised by operators that require a closed surface.
class BoundaryError : public MeshError
{
public:
    using MeshError::MeshError;
};

/// Degenerate geometry: zero-area triangle, cancelling normals, singular stencil.
class DegenerateError : public Error
{
public:
    using Error::Error;
};

/// A point or mesh outside the domain a field or oracle is defined on.
class DomainError : public Error
{
public:
    using Error::Error;
};

class UnstableStepError : public Error
{
public:
    UnstableStepError(const std::string& message, double dt)
        : Error(message)
        , m_dt(dt)
    {}

    double dt() const { return m_dt; }

private:
    double m_dt;
};

} // namespace ltl
