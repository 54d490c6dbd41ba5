#pragma once

#include <stdexcept>
#include <string>

namespace lapsel {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

/// A precondition on an operation's arguments was violated.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Vector/matrix shapes do not agree (cochain vs. complex, feature vs. sample count, ...).
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// Correlation distance requested for a row with zero variance.
class ZeroVarianceRow : public Error {
public:
    using Error::Error;
};

/// A stored simplex has a face that is not itself stored.
class NotClosedUnderInclusion : public Error {
public:
    using Error::Error;
};

/// The same simplex appears twice within one dimension.
class DuplicateSimplex : public Error {
public:
    using Error::Error;
};

/// A complex document does not match the expected schema.
class MalformedDocument : public Error {
public:
    using Error::Error;
};

/// A text input file could not be parsed; message carries file/line context.
class ParseError : public Error {
public:
    using Error::Error;
};

/// An operation addressed a dimension with no simplices.
class NoSimplicesAtDimension : public Error {
public:
    using Error::Error;
};

/// Weights have not been computed for the complex yet.
class MissingWeights : public Error {
public:
    using Error::Error;
};

/// A feature is constant after centering; its Rayleigh quotient is 0/0.
class ZeroVarianceFeature : public Error {
public:
    using Error::Error;
};

/// A sparse q-point feature table lacks a required tuple key.
class MissingTupleValue : public Error {
public:
    using Error::Error;
};

/// A p-value outside (0, 1] was passed to the FDR procedure.
class InvalidPValue : public Error {
public:
    using Error::Error;
};

/// The iterative eigensolver did not reach the residual tolerance.
class ConvergenceFailure : public Error {
public:
    using Error::Error;
};

} // namespace lapsel
