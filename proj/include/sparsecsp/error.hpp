#pragma once

#include <stdexcept>
#include <string>

namespace sparsecsp {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed text input. Line numbers are 1-based; 0 means "no specific line".
class ParseError : public Error {
public:
  ParseError(int line, const std::string &message);
  int line() const noexcept { return line_; }

private:
  int line_;
};

class EmptySupportError : public Error {
public:
  using Error::Error;
};

// Shape mismatch: non-Boolean where Boolean is needed, multi-sorted where a
// shared domain is needed, symbols out of range, table caps exceeded.
class DomainError : public Error {
public:
  using Error::Error;
};

class PreconditionError : public Error {
public:
  using Error::Error;
};

class BudgetError : public Error {
public:
  using Error::Error;
};

} // namespace sparsecsp
