#pragma once

#include <stdexcept>
#include <string>

namespace minstate {

/// Base class for data errors raised by the library. The CLI maps these to
/// exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define MINSTATE_DEFINE_ERROR(Name)           \
  class Name : public Error {                 \
   public:                                    \
    using Error::Error;                       \
  }

MINSTATE_DEFINE_ERROR(EmptySequence);
MINSTATE_DEFINE_ERROR(SequenceTooShort);
MINSTATE_DEFINE_ERROR(UnobservedHistory);
MINSTATE_DEFINE_ERROR(EmptyState);
MINSTATE_DEFINE_ERROR(DegenerateSample);
MINSTATE_DEFINE_ERROR(InvalidConfig);
MINSTATE_DEFINE_ERROR(DeadEnd);
MINSTATE_DEFINE_ERROR(TooLargeForOracle);
MINSTATE_DEFINE_ERROR(CoverOverflow);
MINSTATE_DEFINE_ERROR(CoverInfeasible);
MINSTATE_DEFINE_ERROR(FormatError);
MINSTATE_DEFINE_ERROR(Timeout);

#undef MINSTATE_DEFINE_ERROR

}  // namespace minstate
