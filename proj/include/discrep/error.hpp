#pragma once

#include <stdexcept>
#include <string>

namespace discrep {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct NotSymmetric : Error {
    using Error::Error;
};

struct NotPSD : Error {
    using Error::Error;
};

/// An exact/brute-force routine was asked to run past its size cap.
struct TooLarge : Error {
    using Error::Error;
};

struct FullBasis : Error {
    using Error::Error;
};

struct ExhaustedRetries : Error {
    using Error::Error;
};

struct NoLiveCoordinates : Error {
    using Error::Error;
};

struct NumericalStall : Error {
    using Error::Error;
};

struct RetryLimit : Error {
    using Error::Error;
};

struct RoundFailed : Error {
    using Error::Error;
};

struct ZeroMatrix : Error {
    using Error::Error;
};

struct BadK : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

struct ParseError : Error {
    ParseError(const std::string& msg, long row, long col)
        : Error(msg), row(row), col(col) {}
    long row = -1;  // 1-based, -1 when unknown
    long col = -1;
};

struct RaggedRows : Error {
    RaggedRows(const std::string& msg, long row) : Error(msg), row(row) {}
    long row = -1;  // 1-based
};

}  // namespace discrep
