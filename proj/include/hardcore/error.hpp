#pragma once

#include <stdexcept>
#include <string>

namespace hardcore {

// Input document could not be parsed; line numbers are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Instance exceeds a documented enumeration or memory guard.
class SizeLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hardcore
