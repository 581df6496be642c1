#ifndef LINKSOM_ERROR_HPP
#define LINKSOM_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace linksom {

/// Base class for problems with user-supplied data (files, labels, tables).
/// Precondition violations by callers are reported with std::invalid_argument
/// or std::out_of_range instead.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A line of a text input could not be parsed.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A text input is structurally invalid as a whole (missing header, no content).
class FormatError : public Error {
public:
    using Error::Error;
};

/// Inputs parse fine individually but are inconsistent with each other
/// (unknown label, dimension mismatch between files).
class DataError : public Error {
public:
    using Error::Error;
};

}  // namespace linksom

#endif
