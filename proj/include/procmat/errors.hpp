#pragma once

#include <stdexcept>
#include <string>

namespace procmat {

// Base class for all library errors.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Label conflicts, unknown labels, bad permutations, dimension mismatches.
class layout_error : public error {
public:
    using error::error;
};

// Violated structural invariants: PSD, CPTP, normalization, comb conditions.
class validation_error : public error {
public:
    using error::error;
};

// Scenario-file syntax or semantic errors; carries the offending line.
class parse_error : public error {
public:
    parse_error(const std::string& msg, int line)
        : error("line " + std::to_string(line) + ": " + msg), line_(line) {}
    explicit parse_error(const std::string& msg) : error(msg), line_(0) {}
    int line() const { return line_; }

private:
    int line_;
};

// Numerical failures: negative probabilities beyond tolerance, zero traces.
class numerical_error : public error {
public:
    using error::error;
};

} // namespace procmat
