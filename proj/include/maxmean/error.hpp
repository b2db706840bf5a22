#pragma once

#include <stdexcept>
#include <string>

namespace maxmean {

enum class ErrorCode {
    WindowTooLong,
    InvalidWindow,
    InvalidExponent,
    NonFiniteInput,
    EmptySeries,
    InvalidPeriod,
    LengthTooShort,
    PartitionTooLong,
    InvalidPartition,
    BadOrder,
    EmptyLadder,
    InvalidLength,
    EmptySupport,
    InvalidBreakpoints,
    InvalidEpsilon,
    NotACounterexampleCase,
    InvalidGrid,
    UnknownCheck,
    ParseError,
    NonMonotoneTime,
    IrregularSamplingWithoutResample,
    TooShort,
    InvalidWindowDuration,
};

inline const char* to_string(ErrorCode c) {
    switch (c) {
        case ErrorCode::WindowTooLong: return "WindowTooLong";
        case ErrorCode::InvalidWindow: return "InvalidWindow";
        case ErrorCode::InvalidExponent: return "InvalidExponent";
        case ErrorCode::NonFiniteInput: return "NonFiniteInput";
        case ErrorCode::EmptySeries: return "EmptySeries";
        case ErrorCode::InvalidPeriod: return "InvalidPeriod";
        case ErrorCode::LengthTooShort: return "LengthTooShort";
        case ErrorCode::PartitionTooLong: return "PartitionTooLong";
        case ErrorCode::InvalidPartition: return "InvalidPartition";
        case ErrorCode::BadOrder: return "BadOrder";
        case ErrorCode::EmptyLadder: return "EmptyLadder";
        case ErrorCode::InvalidLength: return "InvalidLength";
        case ErrorCode::EmptySupport: return "EmptySupport";
        case ErrorCode::InvalidBreakpoints: return "InvalidBreakpoints";
        case ErrorCode::InvalidEpsilon: return "InvalidEpsilon";
        case ErrorCode::NotACounterexampleCase: return "NotACounterexampleCase";
        case ErrorCode::InvalidGrid: return "InvalidGrid";
        case ErrorCode::UnknownCheck: return "UnknownCheck";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::NonMonotoneTime: return "NonMonotoneTime";
        case ErrorCode::IrregularSamplingWithoutResample: return "IrregularSamplingWithoutResample";
        case ErrorCode::TooShort: return "TooShort";
        case ErrorCode::InvalidWindowDuration: return "InvalidWindowDuration";
    }
    return "UnknownError";
}

// Single exception type; the code identifies the failed precondition.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& msg)
        : std::runtime_error(std::string(to_string(code)) + ": " + msg), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
    throw Error(code, msg);
}

}  // namespace maxmean
