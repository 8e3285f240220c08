#pragma once

#include <stdexcept>

namespace diracgraph {

// Base of every error the library throws. The CLI maps subclasses onto exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input documents (graph, boundary condition, decomposition files).
class ParseError : public Error {
public:
    using Error::Error;
};

// A graph violating the metric-graph invariants was passed where a valid one is required.
class InvalidGraph : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class EnumerationLimitExceeded : public Error {
public:
    using Error::Error;
};

class SingularTraceForm : public Error {
public:
    using Error::Error;
};

class DegeneratePolynomial : public Error {
public:
    using Error::Error;
};

class WindowTooLarge : public Error {
public:
    using Error::Error;
};

class InvalidDecomposition : public Error {
public:
    using Error::Error;
};

class NoPositiveEigenvalue : public Error {
public:
    using Error::Error;
};

class AcyclicGraph : public Error {
public:
    using Error::Error;
};

} // namespace diracgraph
