#pragma once

#include <stdexcept>
#include <string>

namespace relight {

// Numeric values double as process exit codes for the command-line tool.
enum class ErrorKind : int {
    usage = 1,
    io = 2,
    validation = 3,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }
    int exit_code() const noexcept { return static_cast<int>(kind_); }

private:
    ErrorKind kind_;
};

class UsageError : public Error {
public:
    explicit UsageError(const std::string& message) : Error(ErrorKind::usage, message) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& message) : Error(ErrorKind::io, message) {}
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& message)
        : Error(ErrorKind::validation, message) {}
};

// Throws ValidationError("<what>: <detail>") when cond is false.
void require(bool cond, const std::string& what);

}  // namespace relight
