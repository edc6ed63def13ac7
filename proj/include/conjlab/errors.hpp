#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace conjlab {

// All library errors carry the CLI exit code category:
// 1 = analysis-negative result, 2 = usage/validation error.
class Error : public std::runtime_error {
public:
    Error(std::string msg, int exit_code)
        : std::runtime_error(std::move(msg)), code_(exit_code) {}
    int exit_code() const { return code_; }

private:
    int code_;
};

struct MalformedMap : Error {
    explicit MalformedMap(const std::string& m) : Error("malformed map: " + m, 2) {}
};

struct DomainError : Error {
    explicit DomainError(const std::string& m) : Error("domain error: " + m, 2) {}
};

struct NotMonotone : Error {
    explicit NotMonotone(const std::string& m) : Error("not monotone: " + m, 2) {}
};

struct OutOfRange : Error {
    explicit OutOfRange(const std::string& m) : Error("out of range: " + m, 2) {}
};

struct IndexOutOfRange : Error {
    explicit IndexOutOfRange(const std::string& m) : Error("index out of range: " + m, 2) {}
};

struct DepthCapExceeded : Error {
    explicit DepthCapExceeded(const std::string& m) : Error("depth cap exceeded: " + m, 2) {}
};

struct NotCarcass : Error {
    explicit NotCarcass(const std::string& m) : Error("not a carcass map: " + m, 1) {}
};

struct NotLatticePoint : Error {
    explicit NotLatticePoint(const std::string& m) : Error("not a lattice point: " + m, 2) {}
};

struct InsufficientDepth : Error {
    explicit InsufficientDepth(const std::string& m) : Error("insufficient depth: " + m, 2) {}
};

struct InternalInvariantViolated : Error {
    explicit InternalInvariantViolated(const std::string& m)
        : Error("internal invariant violated: " + m, 2) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& m) : Error("parse error: " + m, 2) {}
};

struct UsageError : Error {
    explicit UsageError(const std::string& m) : Error("usage error: " + m, 2) {}
};

}  // namespace conjlab
