#pragma once

#include <stdexcept>
#include <string>

namespace qspf {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define QSPF_DEFINE_ERROR(Name)                 \
  class Name : public Error {                   \
   public:                                      \
    explicit Name(const std::string& what)      \
        : Error(std::string(#Name ": ") + what) \
    {}                                          \
  }

QSPF_DEFINE_ERROR(InvalidArgument);
/// Grid too small for the coefficient window (wrap-around would occur).
QSPF_DEFINE_ERROR(AliasError);
/// Evaluation point outside [-1, 1].
QSPF_DEFINE_ERROR(DomainError);
/// Odd QSP length n; only n = 2d is supported.
QSPF_DEFINE_ERROR(UnsupportedParity);
/// Target violates the sup-norm bound ||f|| <= 1 - eta.
QSPF_DEFINE_ERROR(NormViolation);
/// Weiss grid doubling hit the configured cap before converging.
QSPF_DEFINE_ERROR(GridExhausted);
QSPF_DEFINE_ERROR(SingularSystem);
/// A coefficient expected to be purely imaginary has a real part.
QSPF_DEFINE_ERROR(NotImaginary);
/// Schur recursion produced a vanishing pivot.
QSPF_DEFINE_ERROR(BreakdownError);

#undef QSPF_DEFINE_ERROR

}  // namespace qspf
