#pragma once

#include <stdexcept>
#include <string>

namespace qclab {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid argument or violated precondition (bad radii, empty grids, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

// A quadrature node or circle sample produced a non-finite value.
class EvaluationError : public Error {
public:
    EvaluationError(const std::string& what, double where)
        : Error(what), where_(where) {}
    double where() const { return where_; }

private:
    double where_;
};

// |mu(z)| >= 1 at an evaluated point, or a radial profile degenerates.
class DegeneratePointError : public Error {
public:
    DegeneratePointError(const std::string& what, double x, double y)
        : Error(what), x_(x), y_(y) {}
    double x() const { return x_; }
    double y() const { return y_; }

private:
    double x_, y_;
};

// Iterative solver failed to reach its residual tolerance.
class SolverError : public Error {
public:
    SolverError(const std::string& what, double residual)
        : Error(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

// Scenario configuration problems; message carries file/line/field context.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace qclab
