#pragma once

#include <stdexcept>
#include <string>

namespace tsfem {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define TSFEM_DEFINE_ERROR(Name)                 \
  class Name : public Error {                    \
  public:                                        \
    explicit Name(const std::string& what)       \
        : Error(std::string(#Name ": ") + what) {} \
  }

// geometry
TSFEM_DEFINE_ERROR(DegeneratePoint);
TSFEM_DEFINE_ERROR(OutOfTube);
TSFEM_DEFINE_ERROR(NotOnSurface);
TSFEM_DEFINE_ERROR(DegenerateElement);
TSFEM_DEFINE_ERROR(UnsupportedDegree);
// mesh io
TSFEM_DEFINE_ERROR(NonTriangleCell);
TSFEM_DEFINE_ERROR(IoError);
// discretization
TSFEM_DEFINE_ERROR(RankMismatch);
TSFEM_DEFINE_ERROR(ConfigError);
// solvers and fitting
TSFEM_DEFINE_ERROR(NotPositiveDefinite);
TSFEM_DEFINE_ERROR(InsufficientData);
TSFEM_DEFINE_ERROR(NonPositiveError);

#undef TSFEM_DEFINE_ERROR

/// Raised by iterative procedures that exhaust their iteration budget.
class NoConvergence : public Error {
public:
  NoConvergence(const std::string& what, int iterations, double residual)
      : Error("NoConvergence: " + what), iterations_(iterations), residual_(residual) {}
  int iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

private:
  int iterations_;
  double residual_;
};

class ParseError : public Error {
public:
  ParseError(const std::string& what, int line)
      : Error("ParseError (line " + std::to_string(line) + "): " + what), line_(line) {}
  int line() const noexcept { return line_; }

private:
  int line_;
};

}  // namespace tsfem
