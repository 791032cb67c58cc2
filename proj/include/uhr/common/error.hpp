#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace uhr {

// Base of every error the toolkit raises. The CLI maps InvalidInput and
// ParseError to exit code 1 and everything else to exit code 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class ScorerUnavailable : public Error {
public:
    using Error::Error;
};

class NumericalError : public Error {
public:
    NumericalError(long step, const std::string& what)
        : Error(step >= 0 ? "step " + std::to_string(step) + ": " + what : what),
          step_(step) {}

    // -1 when the error is not tied to a training step.
    long step() const noexcept { return step_; }

private:
    long step_;
};

} // namespace uhr
