#pragma once

#include <stdexcept>
#include <string>

namespace hypermode {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed system-spec document.
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line, int column);
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// Document parsed but violates a type invariant (shape, key set, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Vector/matrix length does not match what the operation expects.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A complex characteristic root or speed was found.
class NotHyperbolicError : public Error {
public:
    NotHyperbolicError(const std::string& what, double re, double im);
    double root_real() const { return re_; }
    double root_imag() const { return im_; }

private:
    double re_;
    double im_;
};

/// Leading coefficient matrix is numerically singular.
class ConditioningError : public Error {
public:
    using Error::Error;
};

/// Kernel dimension does not match the clustered multiplicity.
class HyperbolicityViolation : public Error {
public:
    using Error::Error;
};

/// Mode continuation failed: clusters merged, split or swapped.
class TrackingLoss : public Error {
public:
    using Error::Error;
};

/// A lifted kernel or factorization check failed.
class LemmaViolation : public Error {
public:
    using Error::Error;
};

/// A mode of a quasisemilinear reduction was found not linearly degenerate.
class PropositionViolation : public Error {
public:
    PropositionViolation(const std::string& what, double indicator);
    double indicator() const { return indicator_; }

private:
    double indicator_;
};

/// Operation is not defined for the given input (wrong system kind, d != 1, ...).
class Unsupported : public Error {
public:
    using Error::Error;
};

}  // namespace hypermode
