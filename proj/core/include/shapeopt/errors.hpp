#pragma once

#include <stdexcept>
#include <string>

namespace shapeopt {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad user input: malformed case files, inconsistent references, out-of-range arguments.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// An elementary operation was evaluated outside its domain (ln of non-positive, sqrt of negative, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// The reduced stiffness matrix is singular or not positive definite.
class SingularMatrixError : public Error {
public:
    /// dof is the reduced index from solve_linear and the global DOF from analyze.
    SingularMatrixError(const std::string& what, long dof) : Error(what), dof_(dof) {}
    long dof() const noexcept { return dof_; }

private:
    long dof_;
};

/// A SolveResult was paired with geometry it was not computed from.
class StaleSolveError : public Error {
public:
    using Error::Error;
};

class LineSearchError : public Error {
public:
    using Error::Error;
};

class DivergenceError : public Error {
public:
    using Error::Error;
};

/// The QP subproblem has no feasible point.
class InfeasibleError : public Error {
public:
    using Error::Error;
};

}  // namespace shapeopt
