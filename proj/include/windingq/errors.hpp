#pragma once

#include <stdexcept>
#include <string>

namespace windingq {

class Error : public std::runtime_error {
public:
    Error(std::string module, const std::string& what)
        : std::runtime_error(module + ": " + what), module_(std::move(module)) {}
    const std::string& module() const { return module_; }

private:
    std::string module_;
};

class AmbientMismatch : public Error {
public:
    explicit AmbientMismatch(const std::string& what) : Error("exactlin", "ambient mismatch: " + what) {}
};

class NotStable : public Error {
public:
    explicit NotStable(const std::string& what) : Error("maninsym", "not stable: " + what) {}
};

class NotExactDivisor : public Error {
public:
    explicit NotExactDivisor(const std::string& what) : Error("heckeop", "not an exact divisor: " + what) {}
};

class SeparationFailure : public Error {
public:
    explicit SeparationFailure(const std::string& what) : Error("decomp", "separation failure: " + what) {}
};

class ProjectorFailure : public Error {
public:
    explicit ProjectorFailure(const std::string& what) : Error("decomp", "projector failure: " + what) {}
};

class NotRankZero : public Error {
public:
    explicit NotRankZero(const std::string& what) : Error("factors", "not rank zero: " + what) {}
};

class BoundTooSmall : public Error {
public:
    explicit BoundTooSmall(const std::string& what) : Error("congruence", "bound too small: " + what) {}
};

class IoFailure : public Error {
public:
    explicit IoFailure(const std::string& what) : Error("cli", "io failure: " + what) {}
};

} // namespace windingq
