#pragma once

#include <stdexcept>
#include <string>

namespace paretoelim {

enum class ErrorKind {
  invalid_argument,
  schema,
  io,
  size_violation,
  numerical,
  degree_cap_exceeded,
  empty_eliminant,
  no_convergence,
  zero_gradient,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

struct InvalidArgument : Error {
  explicit InvalidArgument(const std::string& what) : Error(ErrorKind::invalid_argument, what) {}
};

struct SchemaError : Error {
  explicit SchemaError(const std::string& what) : Error(ErrorKind::schema, what) {}
};

struct IoError : Error {
  explicit IoError(const std::string& what) : Error(ErrorKind::io, what) {}
};

struct SizeViolation : Error {
  explicit SizeViolation(const std::string& what) : Error(ErrorKind::size_violation, what) {}
};

/// A dense factorization did not converge.
struct NumericalError : Error {
  explicit NumericalError(const std::string& what) : Error(ErrorKind::numerical, what) {}
};

struct NoConvergence : Error {
  NoConvergence(const std::string& what, double best_residual)
      : Error(ErrorKind::no_convergence, what), best_residual(best_residual) {}
  double best_residual;
};

struct ZeroGradient : Error {
  explicit ZeroGradient(const std::string& what) : Error(ErrorKind::zero_gradient, what) {}
};

struct EmptyEliminant : Error {
  explicit EmptyEliminant(const std::string& what) : Error(ErrorKind::empty_eliminant, what) {}
};

}  // namespace paretoelim
