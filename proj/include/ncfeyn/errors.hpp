#pragma once

#include <stdexcept>
#include <string>

namespace ncfeyn {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed ribbon graph (bad rotation system, dangling half-edge, ...).
class StructuralError : public Error {
 public:
  using Error::Error;
};

class OrientabilityError : public Error {
 public:
  using Error::Error;
};

class DisconnectedError : public Error {
 public:
  using Error::Error;
};

/// Variable lists of two polynomials disagree.
class VariableMismatch : public Error {
 public:
  using Error::Error;
};

class NonPolynomialResult : public Error {
 public:
  using Error::Error;
};

class NonRealResult : public Error {
 public:
  using Error::Error;
};

class DegreeBoundExceeded : public Error {
 public:
  using Error::Error;
};

class ModelViolation : public Error {
 public:
  using Error::Error;
};

class NotEvaluableAsFunction : public Error {
 public:
  using Error::Error;
};

class ContourDimensionExceeded : public Error {
 public:
  using Error::Error;
};

class TailEstimateTooLarge : public Error {
 public:
  using Error::Error;
};

class DivergentAtD : public Error {
 public:
  using Error::Error;
};

class ConfigurationError : public Error {
 public:
  using Error::Error;
};

/// Graph-file syntax or semantic error. `line()` is 1-based, 0 when the
/// error is not tied to a single line.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace ncfeyn
