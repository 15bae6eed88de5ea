#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace uccvqe {

// Base for every error raised by the library. Standard-library exceptions
// (std::domain_error, std::invalid_argument) are used where they already
// describe the failure; the types below cover the remaining cases.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

class CapacityError : public Error {
 public:
  using Error::Error;
};

class DegenerateOrbitalError : public Error {
 public:
  using Error::Error;
};

}  // namespace uccvqe
