// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace friedman {

//! Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

//! Argument outside the supported domain (n < 1, r < 2, p < 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

//! Tied scores or repeated ranks within one trial.
class TieError : public Error {
 public:
  TieError(std::size_t row, const std::string& what)
      : Error("row " + std::to_string(row) + ": " + what), row_(row) {}
  [[nodiscard]] std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

class NonFiniteError : public Error {
 public:
  NonFiniteError(std::size_t row, const std::string& what)
      : Error("row " + std::to_string(row) + ": " + what), row_(row) {}
  [[nodiscard]] std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

//! Malformed input text; line is 1-based within the source.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

//! A bound needs a derivative norm that is infinite for the given test function.
class InfiniteNormError : public Error {
 public:
  using Error::Error;
};

//! Adaptive quadrature exhausted its subdivision budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

//! Exhaustive enumeration would exceed the configured work budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

}  // namespace friedman
