#pragma once

#include <stdexcept>
#include <string>

namespace sfscert {

// Malformed input: bad syntax, broken invariants.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public InputError {
public:
    ParseError(int line, int column, const std::string& what)
        : InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

// A configured size cap was hit. Carries the amount that would have been needed.
class CapExceeded : public std::runtime_error {
public:
    CapExceeded(const std::string& what, unsigned long long needed)
        : std::runtime_error(what + " (needed " + std::to_string(needed) + ")"), needed_(needed) {}
    unsigned long long needed() const { return needed_; }

private:
    unsigned long long needed_;
};

}  // namespace sfscert
