#pragma once

#include <stdexcept>
#include <string>

namespace atugv {

using CellId = int;

enum class ErrorCode {
    InvalidArgument = 1,
    Decomposition,
    LayeringViolation,
    DegreeViolation,
    ReferenceOverlap,
    Domain,
    UnsafePlan,
    UnreachableSeparation,
    InconsistentAngles,
    Simulation,
    Parse,
    Validation,
    Io,
};

const char* to_string(ErrorCode code);

// Base of every exception thrown by the library. The code survives the trip
// through the C API as a status value.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// Thrown by the kinematics layer; identifies the offending joint (cell, neighbor).
class JointError : public Error {
public:
    JointError(ErrorCode code, CellId cell, CellId neighbor, const std::string& message)
        : Error(code, message), cell_(cell), neighbor_(neighbor) {}

    CellId cell() const noexcept { return cell_; }
    CellId neighbor() const noexcept { return neighbor_; }

private:
    CellId cell_;
    CellId neighbor_;
};

class ParseError : public Error {
public:
    ParseError(int line, const std::string& message)
        : Error(ErrorCode::Parse, "line " + std::to_string(line) + ": " + message), line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

}  // namespace atugv
