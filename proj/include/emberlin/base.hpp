#pragma once

#include <stdexcept>
#include <string>

namespace emberlin {

using VertexId = int;
using HalfEdgeId = int;
using EdgeId = int;  // an edge is named by its lesser half-edge id

// A stated precondition of an operation does not hold.  CLI exit code 2.
struct PreconditionError : std::runtime_error {
    explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

// An internal consistency check failed after a construction step.  CLI exit code 3.
struct VerificationError : std::runtime_error {
    explicit VerificationError(const std::string& what) : std::runtime_error(what) {}
};

// An enumeration would exceed the configured work budget.  CLI exit code 4.
struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input file; message carries a line number.  CLI exit code 2.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace emberlin
