#pragma once

#include <stdexcept>
#include <string>

namespace conebranch {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define CONEBRANCH_DEFINE_ERROR(Name)            \
  class Name : public Error {                    \
   public:                                       \
    using Error::Error;                          \
  }

// numerics
CONEBRANCH_DEFINE_ERROR(PoleError);
CONEBRANCH_DEFINE_ERROR(OverflowError);
CONEBRANCH_DEFINE_ERROR(MaxSubdivisionsExceeded);
CONEBRANCH_DEFINE_ERROR(NonIntegrableSingularity);
CONEBRANCH_DEFINE_ERROR(DimensionTooLarge);
CONEBRANCH_DEFINE_ERROR(DivergentExponent);

// cone
CONEBRANCH_DEFINE_ERROR(ZeroVector);
CONEBRANCH_DEFINE_ERROR(NotPSD);

// group action
CONEBRANCH_DEFINE_ERROR(SingularMatrix);
CONEBRANCH_DEFINE_ERROR(ChartSingularity);

// spectral
CONEBRANCH_DEFINE_ERROR(DivergentRegion);
CONEBRANCH_DEFINE_ERROR(PoleOfContinuation);
CONEBRANCH_DEFINE_ERROR(InsufficientSmoothness);

// argument validation shared by all modules
CONEBRANCH_DEFINE_ERROR(InvalidArgument);

#undef CONEBRANCH_DEFINE_ERROR

}  // namespace conebranch
