#pragma once

#include <stdexcept>
#include <string>

namespace nlm {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Caller misuse: mismatched sample spaces, empty conditioning event,
// malformed input files or expressions.
struct UsageError : Error {
    using Error::Error;
};

// Parameter outside its documented range (b <= 0, epsilon out of [0,1), ...).
struct InvalidParameterError : Error {
    using Error::Error;
};

// An exhaustive scan or enumeration would exceed its configured cap.
struct CapacityError : Error {
    using Error::Error;
};

// Operation defined only for VBM (or coherent VBM/HBM) models.
struct UnsupportedFamilyError : Error {
    using Error::Error;
};

// A named assumption gate failed ("A1".."A4", "strict-dilation",
// "weak-dilation", "lower(B)>0", ...). The gate name is kept separate so
// front ends can surface which hypothesis was violated.
struct AssumptionError : Error {
    AssumptionError(std::string gate_name, const std::string& message)
        : Error(message), gate(std::move(gate_name)) {}
    std::string gate;
};

// A consistency check that should be unreachable for coherent inputs
// fired anyway (e.g. nonpositive conditioning denominator).
struct InternalError : Error {
    using Error::Error;
};

}  // namespace nlm
