#pragma once

#include <stdexcept>
#include <string>

namespace ulmext {

// Raised when an operation is called outside its precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised for malformed user input (DSL, JSON, CLI options).
class InputError : public std::runtime_error {
 public:
  InputError(std::string message, int line = 0, int column = 0)
      : std::runtime_error(format(message, line, column)),
        line_(line),
        column_(column),
        bare_(std::move(message)) {}

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& bare_message() const { return bare_; }

 private:
  static std::string format(const std::string& m, int line, int column) {
    if (line <= 0) return m;
    return std::to_string(line) + ":" + std::to_string(column) + ": " + m;
  }

  int line_;
  int column_;
  std::string bare_;
};

}  // namespace ulmext
