#pragma once

#include <stdexcept>
#include <string>

namespace dnls {

// Base class for everything this library throws.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define DNLS_DEFINE_ERROR(Name)                 \
  class Name : public Error {                   \
   public:                                      \
    using Error::Error;                         \
  }

DNLS_DEFINE_ERROR(InvalidParams);     // bad coupling constant
DNLS_DEFINE_ERROR(InvalidOmega);      // frequency pair outside omega1^2 < 4*omega0
DNLS_DEFINE_ERROR(InvalidArgument);   // other precondition violations
DNLS_DEFINE_ERROR(GridMismatch);      // two fields on different grids
DNLS_DEFINE_ERROR(GridTooShort);      // wave tail does not fit the periodic box
DNLS_DEFINE_ERROR(NoRoot);            // root does not exist (e.g. b = 0 threshold)
DNLS_DEFINE_ERROR(ZeroField);         // nonzero field required
DNLS_DEFINE_ERROR(InternalInconsistency);  // two algebraic routes disagree
DNLS_DEFINE_ERROR(StepLeavesOmega);   // finite-difference stencil exits the domain
DNLS_DEFINE_ERROR(UnresolvedInput);   // spectral tail of initial data too large
DNLS_DEFINE_ERROR(BlowupSuspected);   // H1 norm grew beyond the guard factor
DNLS_DEFINE_ERROR(DriftExceeded);     // conserved quantity drifted past tolerance
DNLS_DEFINE_ERROR(NoConvergence);     // iteration exhausted its budget
DNLS_DEFINE_ERROR(NotInTube);         // field too far from the soliton orbit
DNLS_DEFINE_ERROR(NotUnstableRegime); // operation requires an unstable frequency
DNLS_DEFINE_ERROR(SingularHessian);   // d''(omega) not invertible
DNLS_DEFINE_ERROR(SingularH);         // modulation H-matrix not invertible
DNLS_DEFINE_ERROR(NoBracket);         // root bracketing failed

#undef DNLS_DEFINE_ERROR

}  // namespace dnls
