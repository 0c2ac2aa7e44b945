#ifndef PRESCOUNT_ERRORS_HPP
#define PRESCOUNT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace prescount {

// Malformed input: syntax errors, ill-formed ASTs, contract violations
// detectable from the input alone. CLI exit code 2.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

class ParseError : public ValidationError {
public:
    ParseError(const std::string& msg, std::size_t line, std::size_t col)
        : ValidationError("parse error at " + std::to_string(line) + ":" +
                          std::to_string(col) + ": " + msg),
          line_(line), col_(col) {}

    std::size_t line() const { return line_; }
    std::size_t col() const { return col_; }

private:
    std::size_t line_;
    std::size_t col_;
};

// A configurable budget was exceeded. Carries the offending quantity so
// harnesses can report skips with a reason. CLI exit code 3.
class ResourceError : public std::runtime_error {
public:
    ResourceError(std::string quantity, const std::string& detail)
        : std::runtime_error("resource limit exceeded: " + detail),
          quantity_(std::move(quantity)) {}

    const std::string& quantity() const { return quantity_; }

private:
    std::string quantity_;
};

// A strategy refused to run (e.g. certified bounds too large to enumerate).
// Carries the certificate report to print. CLI exit code 3.
class InfeasibleError : public std::runtime_error {
public:
    explicit InfeasibleError(const std::string& report)
        : std::runtime_error(report) {}
};

// Internal invariant failed (a theorem-backed runtime assertion). Never
// expected; counted as a violation by harnesses.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

} // namespace prescount

#endif
