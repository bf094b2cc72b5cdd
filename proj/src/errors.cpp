#include "paretoelim/errors.hpp"

namespace paretoelim {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "InvalidArgument";
    case ErrorKind::schema: return "SchemaError";
    case ErrorKind::io: return "IoError";
    case ErrorKind::size_violation: return "SizeViolation";
    case ErrorKind::numerical: return "NumericalError";
    case ErrorKind::degree_cap_exceeded: return "DegreeCapExceeded";
    case ErrorKind::empty_eliminant: return "EmptyEliminant";
    case ErrorKind::no_convergence: return "NoConvergence";
    case ErrorKind::zero_gradient: return "ZeroGradient";
  }
  return "Error";
}

}  // namespace paretoelim
