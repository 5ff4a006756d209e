#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace froblift {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidPrime : public Error {
 public:
  using Error::Error;
};

/// Operands live in different rings (arity, modulus or prime disagree).
class RingMismatch : public Error {
 public:
  using Error::Error;
};

class ExponentOverflow : public Error {
 public:
  ExponentOverflow() : Error("exponent overflow") {}
};

/// divide_by_p met a coefficient that is not a multiple of p.
class NotDivisible : public Error {
 public:
  explicit NotDivisible(std::string term)
      : Error("coefficient not divisible by p at term " + term), term_(std::move(term)) {}
  const std::string& term() const noexcept { return term_; }

 private:
  std::string term_;
};

/// Reduction of image `index` (1-based) is not x_index^p.
class NotALifting : public Error {
 public:
  explicit NotALifting(std::size_t index)
      : Error("image " + std::to_string(index) + " does not reduce to x" + std::to_string(index) + "^p"),
        index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// The lifting does not satisfy F*(x_index) = x_index^p * (unit) (1-based).
class NotCompatibleWithDivisor : public Error {
 public:
  explicit NotCompatibleWithDivisor(std::size_t index)
      : Error("lifting not compatible with divisor x" + std::to_string(index) + " = 0"), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class SplittingAxiomFailed : public Error {
 public:
  using Error::Error;
};

class CenterTooSmall : public Error {
 public:
  using Error::Error;
};

class DegreeUnbounded : public Error {
 public:
  using Error::Error;
};

class OrderDivisibleByP : public Error {
 public:
  using Error::Error;
};

class InvalidGroup : public Error {
 public:
  using Error::Error;
};

class NonIntegralChi : public Error {
 public:
  NonIntegralChi(long long num, long long den)
      : Error("non-integral Euler characteristic " + std::to_string(num) + "/" + std::to_string(den)),
        num_(num),
        den_(den) {}
  long long numerator() const noexcept { return num_; }
  long long denominator() const noexcept { return den_; }

 private:
  long long num_;
  long long den_;
};

/// Malformed chart, splitting or group description file.
class InputFormatError : public Error {
 public:
  using Error::Error;
};

class InvalidRecord : public Error {
 public:
  using Error::Error;
};

/// Raised when an identity that holds by construction is observed to fail.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

class RoundtripFailed : public InternalInconsistency {
 public:
  using InternalInconsistency::InternalInconsistency;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class UnknownVariable : public Error {
 public:
  explicit UnknownVariable(const std::string& name) : Error("unknown variable '" + name + "'"), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

}  // namespace froblift
